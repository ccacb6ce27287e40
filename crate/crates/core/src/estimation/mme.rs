use super::optimizer::{multistart, ParamSpace, SearchOptions, START_SHAPES};
use super::{EstimationMethod, FitResult, Sample};
use crate::analytics::raw_moment;
use crate::quadrature::QuadratureSpec;
use crate::NtleParams;

/// Quadrature used inside the moment-matching objective.
fn inner_quadrature() -> QuadratureSpec {
    QuadratureSpec::new(1e-12, 1e-10, 400).expect("valid spec")
}

/// Moments `E[Y^k]`, `k = 1, 2, 3`, at `λ = 1`; they scale as `λ^{-k}`.
fn unit_moments(beta: f64, delta: f64, q: &QuadratureSpec) -> Option<[f64; 3]> {
    let p = NtleParams::new(1.0, beta, delta).ok()?;
    let mut out = [0.0; 3];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = raw_moment(&p, k as u32 + 1, q).ok()?;
    }
    Some(out)
}

/// Sum of squared relative residuals `Σ (μₖ(p)/mₖ - 1)²`.
pub fn moment_residual(p: &NtleParams, m: &[f64; 3], q: &QuadratureSpec) -> f64 {
    match unit_moments(p.beta(), p.delta(), q) {
        Some(mu) => {
            let r: f64 = (0..3)
                .map(|k| (mu[k] / p.lambda().powi(k as i32 + 1) / m[k] - 1.0).powi(2))
                .sum();
            if r.is_finite() {
                r
            } else {
                f64::INFINITY
            }
        }
        None => f64::INFINITY,
    }
}

/// Method of moments from the first three sample raw moments.
pub fn fit_mme(s: &Sample) -> FitResult {
    fit_mme_moments([s.raw_moment(1), s.raw_moment(2), s.raw_moment(3)])
}

/// Method of moments from given raw moments `m₁, m₂, m₃`.
pub fn fit_mme_moments(m: [f64; 3]) -> FitResult {
    let q = inner_quadrature();
    let space = ParamSpace::FULL;
    let starts: Vec<NtleParams> = START_SHAPES
        .iter()
        .filter_map(|&(b, d)| {
            let mu1 = unit_moments(b, d, &q)?[0];
            NtleParams::new(mu1 / m[0], b, d).ok()
        })
        .collect();
    let opts = SearchOptions {
        screening_evals: 40,
        ..SearchOptions::default()
    };
    let r = multistart(|p| moment_residual(p, &m, &q), &starts, &space, &opts);
    let objective = r.value.sqrt();
    let mut fit = FitResult::new(r.params, EstimationMethod::Mme, objective, r.converged, r.evals);
    if !r.converged {
        fit.warnings.push("simplex search did not converge".into());
    }
    fit
}
