//! Derivative-free minimisation shared by every estimator.
//!
//! The search runs in unconstrained coordinates `(ln λ, ln β, atanh δ)`,
//! clamped to a box that keeps every decoded triple valid and finite.

use crate::NtleParams;

const LN_LAMBDA_BOX: f64 = 40.0;
const LN_BETA_BOX: f64 = 7.0;
const ETA_BOX: f64 = 12.0;

/// Which coordinates are free. Pinned values are held fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSpace {
    pub beta: Option<f64>,
    pub delta: Option<f64>,
}

impl ParamSpace {
    pub const FULL: ParamSpace = ParamSpace { beta: None, delta: None };
    /// The logistic-exponential submodel (`δ = 0`).
    pub const LOGISTIC_EXPONENTIAL: ParamSpace = ParamSpace {
        beta: None,
        delta: Some(0.0),
    };

    pub fn dim(&self) -> usize {
        1 + self.beta.is_none() as usize + self.delta.is_none() as usize
    }

    pub fn encode(&self, p: &NtleParams) -> Vec<f64> {
        let mut z = vec![p.lambda().ln()];
        if self.beta.is_none() {
            z.push(p.beta().ln());
        }
        if self.delta.is_none() {
            z.push(p.delta().atanh());
        }
        z
    }

    pub fn decode(&self, z: &[f64]) -> NtleParams {
        let mut it = z.iter();
        let lambda = it.next().unwrap().clamp(-LN_LAMBDA_BOX, LN_LAMBDA_BOX).exp();
        let beta = match self.beta {
            Some(b) => b,
            None => it.next().unwrap().clamp(-LN_BETA_BOX, LN_BETA_BOX).exp(),
        };
        let delta = match self.delta {
            Some(d) => d,
            None => it.next().unwrap().clamp(-ETA_BOX, ETA_BOX).tanh(),
        };
        NtleParams::new(lambda, beta, delta).expect("box keeps parameters valid")
    }

    /// Project a parameter triple onto this space.
    pub fn project(&self, p: &NtleParams) -> NtleParams {
        self.decode(&self.encode(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    pub max_evals: usize,
    pub initial_step: f64,
    /// Absolute spread of simplex values treated as converged.
    pub f_tol: f64,
    pub x_tol: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_evals: 2000,
            initial_step: 0.25,
            f_tol: 1e-10,
            x_tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

/// Nelder–Mead with standard coefficients. NaN objective values count as `+∞`.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(f: F, x0: &[f64], opts: &NelderMeadOptions) -> Minimum {
    let d = x0.len();
    let evals = std::cell::Cell::new(0usize);
    let eval = |x: &[f64]| {
        evals.set(evals.get() + 1);
        sanitize(f(x))
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    simplex.push((x0.to_vec(), eval(x0)));
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += opts.initial_step;
        let fx = eval(&x);
        simplex.push((x, fx));
    }
    let mut converged = false;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[d].1;
        let spread = if best.is_finite() { worst - best } else { f64::INFINITY };
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if (spread <= opts.f_tol * (1.0 + best.abs()) && diameter <= 1e-4) || diameter <= opts.x_tol {
            converged = best.is_finite();
            break;
        }
        if evals.get() >= opts.max_evals {
            break;
        }
        let mut centroid = vec![0.0; d];
        for (x, _) in &simplex[..d] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / d as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[d].0)
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let xr = along(-1.0);
        let fr = eval(&xr);
        if fr < simplex[0].1 {
            let xe = along(-2.0);
            let fe = eval(&xe);
            simplex[d] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[d - 1].1 {
            simplex[d] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < simplex[d].1 {
            let x = along(-0.5);
            let fx = eval(&x);
            (x, fx)
        } else {
            let x = along(0.5);
            let fx = eval(&x);
            (x, fx)
        };
        if fc < fr.min(simplex[d].1) {
            simplex[d] = (xc, fc);
            continue;
        }
        let x_best = simplex[0].0.clone();
        for entry in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = x_best.iter().zip(&entry.0).map(|(b, xi)| b + 0.5 * (xi - b)).collect();
            let fx = eval(&x);
            *entry = (x, fx);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    Minimum {
        x,
        value,
        evals: evals.get(),
        converged,
    }
}

/// Outcome of a multi-start search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub params: NtleParams,
    pub value: f64,
    pub evals: usize,
    pub converged: bool,
}

/// Budget of a multi-start search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Evaluations spent on each start during screening.
    pub screening_evals: usize,
    /// Number of screened candidates refined to convergence.
    pub refine: usize,
    pub refine_opts: NelderMeadOptions,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            screening_evals: 60,
            refine: 2,
            refine_opts: NelderMeadOptions::default(),
        }
    }
}

/// `(β, δ)` pairs behind the deterministic starting points.
pub const START_SHAPES: [(f64, f64); 8] = [
    (1.0, 0.0),
    (1.5, 0.5),
    (0.7, -0.5),
    (2.5, 0.0),
    (1.0, 0.8),
    (1.0, -0.8),
    (0.4, 0.0),
    (2.0, -0.5),
];

/// Starting points: each `(β, δ)` shape with `λ` chosen so that the model
/// median matches `median`.
pub fn median_matched_starts(median: f64, space: &ParamSpace) -> Vec<NtleParams> {
    START_SHAPES
        .iter()
        .map(|&(b, d)| {
            let b = space.beta.unwrap_or(b);
            let d = space.delta.unwrap_or(d);
            let unit = NtleParams::new(1.0, b, d).expect("valid start shape");
            let lambda = unit.quantile(0.5).expect("median") / median;
            space.project(&NtleParams::new(lambda, b, d).expect("valid start"))
        })
        .collect()
}

/// Screen every start with a short simplex run, then refine the best few
/// (with one restart each) and keep the overall best.
pub fn multistart<F: Fn(&NtleParams) -> f64>(
    objective: F,
    starts: &[NtleParams],
    space: &ParamSpace,
    opts: &SearchOptions,
) -> SearchResult {
    let f = |z: &[f64]| objective(&space.decode(z));
    let screen_opts = NelderMeadOptions {
        max_evals: opts.screening_evals,
        ..opts.refine_opts
    };
    let mut evals = 0;
    let mut screened: Vec<Minimum> = starts
        .iter()
        .map(|p| {
            let m = nelder_mead(f, &space.encode(p), &screen_opts);
            evals += m.evals;
            m
        })
        .collect();
    screened.sort_by(|a, b| a.value.total_cmp(&b.value));
    let mut best: Option<Minimum> = None;
    for cand in screened.iter().take(opts.refine.max(1)) {
        let mut m = nelder_mead(f, &cand.x, &opts.refine_opts);
        evals += m.evals;
        // restart from the optimum to escape a collapsed simplex
        let restart_opts = NelderMeadOptions {
            initial_step: 0.05,
            ..opts.refine_opts
        };
        let again = nelder_mead(f, &m.x, &restart_opts);
        evals += again.evals;
        if again.value <= m.value {
            m = Minimum {
                converged: again.converged,
                ..again
            };
        }
        if best.as_ref().is_none_or(|b| m.value < b.value) {
            best = Some(m);
        }
    }
    let best = best.expect("at least one start");
    SearchResult {
        params: space.decode(&best.x),
        value: best.value,
        evals,
        converged: best.converged && best.value.is_finite(),
    }
}
