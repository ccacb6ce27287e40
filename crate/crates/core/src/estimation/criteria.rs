//! Objective functions of the estimators, evaluated on sorted samples.
//!
//! Each returns a finite value or `+∞` (never NaN) so that the optimizer can
//! treat invalid trial parameters as infeasible.

use crate::numeric::{ln_expm1, log_add_exp, softplus};
use crate::NtleParams;

fn finite_or_inf(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        f64::INFINITY
    }
}

/// Log-likelihood `Σ ln g(yᵢ)`; `-∞` when any term is not finite.
pub fn log_likelihood_values(p: &NtleParams, ys: &[f64]) -> f64 {
    let (lambda, beta, delta) = (p.lambda(), p.beta(), p.delta());
    let ln_a = (1.0 + delta).ln();
    let ln_b = (1.0 - delta).ln();
    let mut total = ys.len() as f64 * (beta.ln() + lambda.ln());
    for &y in ys {
        if !(y > 0.0) {
            return f64::NEG_INFINITY;
        }
        let z = lambda * y;
        let ln_x = ln_expm1(z);
        let s = beta * ln_x;
        total += z + (beta - 1.0) * ln_x + log_add_exp(ln_a, ln_b + s) - 3.0 * softplus(s);
    }
    if total.is_finite() {
        total
    } else {
        f64::NEG_INFINITY
    }
}

/// Plotting position `i/(n+1)` for 1-based `i`.
#[inline]
pub fn plotting_position(i: usize, n: usize) -> f64 {
    i as f64 / (n as f64 + 1.0)
}

/// WLSE weight `(n+1)²(n+2) / (i(n-i+1))` for 1-based `i`.
#[inline]
pub fn wlse_weight(i: usize, n: usize) -> f64 {
    let n1 = n as f64 + 1.0;
    n1 * n1 * (n1 + 1.0) / (i as f64 * (n1 - i as f64))
}

fn cdf_at(p: &NtleParams, y: f64) -> f64 {
    p.cdf(y).unwrap_or(f64::NAN)
}

/// `Σ [G(y₍ᵢ₎) - i/(n+1)]²`
pub fn lse(p: &NtleParams, ys: &[f64]) -> f64 {
    let n = ys.len();
    let s: f64 = ys
        .iter()
        .enumerate()
        .map(|(i, &y)| (cdf_at(p, y) - plotting_position(i + 1, n)).powi(2))
        .sum();
    finite_or_inf(s)
}

/// `Σ wᵢ [G(y₍ᵢ₎) - i/(n+1)]²`
pub fn wlse(p: &NtleParams, ys: &[f64]) -> f64 {
    let n = ys.len();
    let s: f64 = ys
        .iter()
        .enumerate()
        .map(|(i, &y)| wlse_weight(i + 1, n) * (cdf_at(p, y) - plotting_position(i + 1, n)).powi(2))
        .sum();
    finite_or_inf(s)
}

/// Spacings below this are repaired.
pub const SPACING_FLOOR: f64 = 1e-12;

/// Log product of spacings `M = Σ_{i=1}^{n+1} ln Dᵢ` (to be maximised).
///
/// Each spacing is taken from the CDF or the survival function, whichever
/// side is closer, so both tails keep precision. A spacing below
/// [`SPACING_FLOOR`] is replaced by `g(mid)·gap`, or by the floor itself
/// when the gap is zero.
pub fn log_spacings(p: &NtleParams, ys: &[f64]) -> f64 {
    let n = ys.len();
    let mut total = 0.0;
    let (mut g_prev, mut s_prev, mut y_prev) = (0.0, 1.0, 0.0);
    for i in 0..=n {
        let (g, s, y) = if i < n {
            let y = ys[i];
            match (p.cdf(y), p.survival(y)) {
                (Ok(g), Ok(s)) => (g, s, y),
                _ => return f64::NEG_INFINITY,
            }
        } else {
            (1.0, 0.0, f64::INFINITY)
        };
        let mut d = if g <= 0.5 { g - g_prev } else { s_prev - s };
        if !(d >= SPACING_FLOOR) {
            let gap = y - y_prev;
            let repaired = if gap > 0.0 && gap.is_finite() {
                p.pdf(0.5 * (y + y_prev)).unwrap_or(0.0) * gap
            } else {
                0.0
            };
            d = if repaired > 0.0 && repaired.is_finite() {
                repaired
            } else {
                SPACING_FLOOR
            };
        }
        total += d.ln();
        g_prev = g;
        s_prev = s;
        y_prev = y;
    }
    if total.is_finite() {
        total
    } else {
        f64::NEG_INFINITY
    }
}

/// Anderson–Darling statistic
/// `-n - (1/n) Σ (2i-1)[ln G(y₍ᵢ₎) + ln S(y₍ₙ₊₁₋ᵢ₎)]`.
pub fn anderson_darling(p: &NtleParams, ys: &[f64]) -> f64 {
    let n = ys.len();
    let mut acc = 0.0;
    for i in 0..n {
        let lg = p.ln_cdf(ys[i]).unwrap_or(f64::NAN);
        let ls = p.ln_survival(ys[n - 1 - i]).unwrap_or(f64::NAN);
        acc += (2.0 * i as f64 + 1.0) * (lg + ls);
    }
    finite_or_inf(-(n as f64) - acc / n as f64)
}

/// Cramér–von Mises statistic `1/(12n) + Σ [G(y₍ᵢ₎) - (2i-1)/(2n)]²`.
pub fn cramer_von_mises(p: &NtleParams, ys: &[f64]) -> f64 {
    let n = ys.len();
    let nf = n as f64;
    let s: f64 = ys
        .iter()
        .enumerate()
        .map(|(i, &y)| (cdf_at(p, y) - (2.0 * i as f64 + 1.0) / (2.0 * nf)).powi(2))
        .sum();
    finite_or_inf(1.0 / (12.0 * nf) + s)
}

/// Percentile criterion `Σ [y₍ᵢ₎ - Q(i/(n+1))]²`.
pub fn percentile_quantile(p: &NtleParams, ys: &[f64]) -> f64 {
    let n = ys.len();
    let s: f64 = ys
        .iter()
        .enumerate()
        .map(|(i, &y)| (y - p.quantile(plotting_position(i + 1, n)).unwrap_or(f64::NAN)).powi(2))
        .sum();
    finite_or_inf(s)
}

/// Maximum goodness-of-fit statistic `max |G(y₍ᵢ₎) - (i-0.5)/n|`.
pub fn max_gof(p: &NtleParams, ys: &[f64]) -> f64 {
    let nf = ys.len() as f64;
    let m = ys
        .iter()
        .enumerate()
        .map(|(i, &y)| (cdf_at(p, y) - (i as f64 + 0.5) / nf).abs())
        .fold(0.0, |a: f64, b| if b.is_nan() { f64::NAN } else { a.max(b) });
    finite_or_inf(m)
}
