//! Independent oracles: the density and CDF written directly from their
//! displayed formulas, and a fixed composite Gauss–Legendre rule in `ln y`.
#![allow(dead_code)]

use ntle::NtleParams;

pub fn p(l: f64, b: f64, d: f64) -> NtleParams {
    NtleParams::new(l, b, d).unwrap()
}

/// λ × β × δ grid used by the distribution-level checks.
pub fn full_grid() -> Vec<NtleParams> {
    let mut out = Vec::new();
    for &l in &[0.5, 1.0, 2.0] {
        for &b in &[0.5, 1.0, 1.5, 3.0] {
            for &d in &[-0.9, -0.5, 0.0, 0.5, 0.9] {
                out.push(p(l, b, d));
            }
        }
    }
    out
}

/// `g(y) = βλ e^{λy}(e^{λy}-1)^{β-1} [(1+u) + δ(1-u)] / (1+u)³`
pub fn naive_pdf(q: &NtleParams, y: f64) -> f64 {
    let (l, b, d) = (q.lambda(), q.beta(), q.delta());
    let e = (l * y).exp();
    let x = (l * y).exp_m1();
    let u = x.powf(b);
    b * l * e * x.powf(b - 1.0) * ((1.0 + u) + d * (1.0 - u)) / (1.0 + u).powi(3)
}

/// `G(y) = u (1 + δ + u) / (1 + u)²`
pub fn naive_cdf(q: &NtleParams, y: f64) -> f64 {
    let u = (q.lambda() * y).exp_m1().powf(q.beta());
    u * (1.0 + q.delta() + u) / (1.0 + u).powi(2)
}

pub fn naive_survival(q: &NtleParams, y: f64) -> f64 {
    let u = (q.lambda() * y).exp_m1().powf(q.beta());
    (1.0 + u * (1.0 - q.delta())) / (1.0 + u).powi(2)
}

const GL_NODES: [f64; 8] = [
    -0.960_289_856_497_536_3,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329_0,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_3,
    0.222_381_034_453_374_5,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362_0,
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Composite 8-point Gauss–Legendre on `[a, b]` with `panels` panels.
pub fn gauss_legendre<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * h;
        for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
            total += w * f(mid + 0.5 * h * x);
        }
    }
    0.5 * h * total
}

/// `∫_lo^hi f(y) dy` via `y = e^s`.
pub fn integrate_log_y<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    gauss_legendre(
        |s| {
            let y = s.exp();
            f(y) * y
        },
        lo.ln(),
        hi.ln(),
        6000,
    )
}

/// Upper integration limit where `u = (e^{λy}-1)^β` reaches `1e100`; the
/// survival beyond it is below `1e-99` and the naive formulas stay finite.
pub fn y_max(q: &NtleParams) -> f64 {
    (1e100f64.powf(1.0 / q.beta())).ln_1p() / q.lambda()
}

/// `∫_0^∞ f(y) dy` for integrands dominated by the density.
pub fn integrate_support<F: Fn(f64) -> f64>(q: &NtleParams, f: F) -> f64 {
    integrate_log_y(f, 1e-30 / q.lambda(), y_max(q))
}
