use serde::{Deserialize, Serialize};

use super::{integrate_v, weight, y_of, VBound, VPoint};
use crate::error::{NtleError, Result};
use crate::numeric::softplus;
use crate::quadrature::QuadratureSpec;
use crate::NtleParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub p: f64,
    pub value: f64,
}

fn check_order(k: u32) -> Result<()> {
    if k == 0 {
        return Err(NtleError::domain("moment order must be at least 1"));
    }
    Ok(())
}

fn moment_between(p: &NtleParams, k: u32, lo: VBound, hi: VBound, q: &QuadratureSpec) -> Result<f64> {
    integrate_v(|pt| y_of(p, &pt).powi(k as i32) * weight(p, &pt), lo, hi, q)
}

/// `E[Y^k]`.
pub fn raw_moment(p: &NtleParams, k: u32, q: &QuadratureSpec) -> Result<f64> {
    check_order(k)?;
    moment_between(p, k, VBound::ZERO, VBound::ONE, q)
}

/// `E[Y^k 1{Y ≤ t}]`; zero at `t = 0`.
pub fn incomplete_moment(p: &NtleParams, k: u32, t: f64, q: &QuadratureSpec) -> Result<f64> {
    check_order(k)?;
    if t.is_nan() || t < 0.0 {
        return Err(NtleError::domain(format!("threshold must be nonnegative, got {t}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    moment_between(p, k, VBound::ZERO, VBound::at_y(p, t), q)
}

/// `1 / ((1 + u^{1/β}) u^{(β-1)/β})` in log form: the `dy/du` factor times `βλ`.
#[inline]
fn ln_jacobian(beta: f64, pt: &VPoint) -> f64 {
    let ln_u = pt.ln_u();
    -softplus(ln_u / beta) - (beta - 1.0) / beta * ln_u
}

/// Mean residual life `m(t) = E[Y - t | Y > t]`.
pub fn mean_residual_life(p: &NtleParams, t: f64, q: &QuadratureSpec) -> Result<f64> {
    if t.is_nan() || t < 0.0 {
        return Err(NtleError::domain(format!("t must be nonnegative, got {t}")));
    }
    let surv = p.survival(t)?;
    if !(surv > 1e-300) {
        return Err(NtleError::TailOverflow(format!("survival at t={t} is {surv:e}")));
    }
    let (beta, delta) = (p.beta(), p.delta());
    // ∫_{u_t}^∞ (1+(1-δ)u)/(1+u)² · du/((1+u^{1/β}) u^{(β-1)/β});
    // in v the first factor times du/dv is (1 - δv)/(1 - v).
    let integral = integrate_v(
        |pt| ((-delta * pt.v).ln_1p() - pt.ln_w + ln_jacobian(beta, &pt)).exp(),
        VBound::at_y(p, t),
        VBound::ONE,
        q,
    )?;
    Ok(integral / (beta * p.lambda() * surv))
}

/// Reversed residual life `r(t) = E[t - Y | Y ≤ t]`.
pub fn reversed_residual_life(p: &NtleParams, t: f64, q: &QuadratureSpec) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return Err(NtleError::domain(format!("t must be positive, got {t}")));
    }
    let g = p.cdf(t)?;
    if !(g > 1e-300) {
        return Err(NtleError::Underflow(format!("cdf at t={t} is {g:e}")));
    }
    let (beta, delta) = (p.beta(), p.delta());
    // ∫_0^{u_t} u(1+δ+u)/(1+u)² · du/(...); in v: v(1 + δ(1-v)) / (1-v)².
    let integral = integrate_v(
        |pt| (pt.ln_v + (delta * pt.w).ln_1p() - 2.0 * pt.ln_w + ln_jacobian(beta, &pt)).exp(),
        VBound::ZERO,
        VBound::at_y(p, t),
        q,
    )?;
    Ok(integral / (beta * p.lambda() * g))
}

fn check_prob(prob: f64) -> Result<()> {
    if !(prob > 0.0 && prob < 1.0) {
        return Err(NtleError::domain(format!("probability must lie in (0, 1), got {prob}")));
    }
    Ok(())
}

/// Lorenz curve `L(p) = μ₁(Q(p)) / μ`.
pub fn lorenz_curve(p: &NtleParams, prob: f64, q: &QuadratureSpec) -> Result<CurvePoint> {
    check_prob(prob)?;
    let (v, w) = p.v_at_prob(prob);
    let partial = moment_between(p, 1, VBound::ZERO, VBound { v, w }, q)?;
    let mean = raw_moment(p, 1, q)?;
    Ok(CurvePoint {
        p: prob,
        value: partial / mean,
    })
}

/// Bonferroni curve `B(p) = L(p) / p`.
pub fn bonferroni_curve(p: &NtleParams, prob: f64, q: &QuadratureSpec) -> Result<CurvePoint> {
    let l = lorenz_curve(p, prob, q)?;
    Ok(CurvePoint {
        p: prob,
        value: l.value / prob,
    })
}
