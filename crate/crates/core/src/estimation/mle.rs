use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use super::criteria::log_likelihood_values;
use super::optimizer::{median_matched_starts, multistart, ParamSpace, SearchOptions};
use super::{EstimationMethod, FitResult, Sample};
use crate::NtleParams;

/// `ℓ(p) = Σ ln g(yᵢ)`; `-∞` signals an infeasible point and NaN never occurs.
pub fn log_likelihood(p: &NtleParams, s: &Sample) -> f64 {
    log_likelihood_values(p, s.values())
}

/// Maximum likelihood over all three parameters, with observed-information
/// standard errors and Wald intervals.
pub fn fit_mle(s: &Sample) -> FitResult {
    let mut fit = fit_mle_constrained(s, &ParamSpace::FULL, &[]);
    attach_wald_intervals(&mut fit, s);
    fit
}

/// Maximum likelihood within `space`, searching the standard starts plus
/// `extra_starts`. No standard errors are attached.
pub fn fit_mle_constrained(s: &Sample, space: &ParamSpace, extra_starts: &[NtleParams]) -> FitResult {
    let mut starts = median_matched_starts(s.median(), space);
    starts.extend(extra_starts.iter().map(|p| space.project(p)));
    let r = multistart(|p| -log_likelihood(p, s), &starts, space, &SearchOptions::default());
    let mut fit = FitResult::new(r.params, EstimationMethod::Mle, -r.value, r.converged, r.evals);
    if !r.converged {
        fit.warnings.push("simplex search did not converge".into());
    }
    fit
}

/// Observed information `-∂²ℓ/∂θ∂θᵀ` in `(λ, β, δ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservedInformation {
    pub matrix: [[f64; 3]; 3],
    /// Inverse of `matrix` when it is positive definite.
    pub covariance: Option<[[f64; 3]; 3]>,
}

fn to_rows(m: &Matrix3<f64>) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = m[(i, j)];
        }
    }
    out
}

/// Central-difference Hessian of `-ℓ`, step `max(1e-5, 1e-4|θᵢ|)` per
/// coordinate (shrunk for `δ` near `±1`), symmetrised.
pub fn observed_information(p: &NtleParams, s: &Sample) -> ObservedInformation {
    let theta = p.as_array();
    let mut h = theta.map(|t| (1e-4 * t.abs()).max(1e-5));
    h[0] = h[0].min(0.25 * theta[0]);
    h[1] = h[1].min(0.25 * theta[1]);
    h[2] = h[2].min(0.25 * (1.0 - theta[2].abs()));
    let nll = |d: [f64; 3]| -> f64 {
        match NtleParams::new(theta[0] + d[0], theta[1] + d[1], theta[2] + d[2]) {
            Ok(q) => -log_likelihood(&q, s),
            Err(_) => f64::NAN,
        }
    };
    let f0 = nll([0.0; 3]);
    let mut m = Matrix3::zeros();
    for i in 0..3 {
        let mut e = [0.0; 3];
        e[i] = h[i];
        let plus = nll(e);
        e[i] = -h[i];
        let minus = nll(e);
        m[(i, i)] = (plus - 2.0 * f0 + minus) / (h[i] * h[i]);
        for j in 0..i {
            let corner = |si: f64, sj: f64| {
                let mut e = [0.0; 3];
                e[i] = si * h[i];
                e[j] = sj * h[j];
                nll(e)
            };
            let v = (corner(1.0, 1.0) - corner(1.0, -1.0) - corner(-1.0, 1.0) + corner(-1.0, -1.0))
                / (4.0 * h[i] * h[j]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    let sym = 0.5 * (m + m.transpose());
    let covariance = if sym.iter().all(|x| x.is_finite()) {
        sym.cholesky().map(|c| to_rows(&c.inverse()))
    } else {
        None
    };
    ObservedInformation {
        matrix: to_rows(&sym),
        covariance,
    }
}

/// Two-sided 95% normal multiplier.
pub const Z_975: f64 = 1.96;

pub(crate) fn attach_wald_intervals(fit: &mut FitResult, s: &Sample) {
    let info = observed_information(&fit.params, s);
    let Some(cov) = info.covariance else {
        fit.warnings
            .push("observed information is not positive definite; intervals omitted".into());
        return;
    };
    let se = [cov[0][0].sqrt(), cov[1][1].sqrt(), cov[2][2].sqrt()];
    if se.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
        fit.warnings.push("non-finite standard errors; intervals omitted".into());
        return;
    }
    let th = fit.params.as_array();
    fit.stderr = Some(se);
    fit.ci95 = Some([0, 1, 2].map(|i| [th[i] - Z_975 * se[i], th[i] + Z_975 * se[i]]));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_information_entry() {
        let p = NtleParams::new(2.0, 1.0, 0.0).unwrap();
        let s = Sample::new(p.sample(400, 3).unwrap()).unwrap();
        let info = observed_information(&p, &s);
        let expect = 400.0 / 4.0;
        assert!((info.matrix[0][0] - expect).abs() / expect < 1e-4, "{:?}", info.matrix);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(info.matrix[i][j], info.matrix[j][i]);
            }
        }
    }
}
