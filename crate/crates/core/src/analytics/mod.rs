//! Derived quantities of the distribution: entropies, moments, residual
//! life, concentration curves, stress-strength reliability and stochastic
//! ordering.
//!
//! Integrals are taken in the logistic coordinate `v = u/(1+u)`, under which
//! the probability element becomes `g(y) dy = (1 + δ - 2δv) dv` on `(0, 1)`.

mod entropy;
mod moments;
mod reliability;

pub use entropy::{k_delta, renyi_entropy_integer, renyi_entropy_numeric, shannon_entropy, EntropyResult};
pub use moments::{
    bonferroni_curve, incomplete_moment, lorenz_curve, mean_residual_life, raw_moment, reversed_residual_life,
    CurvePoint,
};
pub use reliability::{
    stochastically_leq, stress_strength, stress_strength_integral, OrderingBasis, OrderingResult,
};

use crate::error::Result;
use crate::numeric::softplus;
use crate::quadrature::{integrate, QuadratureSpec};
use crate::NtleParams;

/// A point of `(0, 1)` carried as both `v` and `1 - v` so that either end
/// keeps full relative precision.
#[derive(Debug, Clone, Copy)]
pub(crate) struct VPoint {
    pub v: f64,
    pub w: f64,
    pub ln_v: f64,
    pub ln_w: f64,
}

impl VPoint {
    fn from_v(v: f64) -> Self {
        Self {
            v,
            w: 1.0 - v,
            ln_v: v.ln(),
            ln_w: (-v).ln_1p(),
        }
    }

    fn from_w(w: f64) -> Self {
        Self {
            v: 1.0 - w,
            w,
            ln_v: (-w).ln_1p(),
            ln_w: w.ln(),
        }
    }

    /// `ln u = ln v - ln(1 - v)`
    pub fn ln_u(&self) -> f64 {
        self.ln_v - self.ln_w
    }
}

/// Bounds of a `v`-interval given as `(v, 1 - v)` pairs.
#[derive(Debug, Clone, Copy)]
pub(crate) struct VBound {
    pub v: f64,
    pub w: f64,
}

impl VBound {
    pub const ZERO: VBound = VBound { v: 0.0, w: 1.0 };
    pub const ONE: VBound = VBound { v: 1.0, w: 0.0 };

    /// The `v` coordinate of the point `y`.
    pub fn at_y(p: &NtleParams, y: f64) -> Self {
        if y <= 0.0 {
            return Self::ZERO;
        }
        if y == f64::INFINITY {
            return Self::ONE;
        }
        let c = p.coords(y);
        Self { v: c.v, w: c.w }
    }
}

/// Integrate `f` over `v ∈ (lo, hi)`: the lower half in `v`, the upper half
/// in `w = 1 - v`.
pub(crate) fn integrate_v<F: Fn(VPoint) -> f64>(f: F, lo: VBound, hi: VBound, q: &QuadratureSpec) -> Result<f64> {
    let mut total = 0.0;
    if lo.v < 0.5 {
        let top = hi.v.min(0.5);
        if top > lo.v {
            total += integrate(|v| f(VPoint::from_v(v)), lo.v, top, q)?.value;
        }
    }
    if hi.v > 0.5 {
        let w_top = lo.w.min(0.5);
        if w_top > hi.w {
            total += integrate(|w| f(VPoint::from_w(w)), hi.w, w_top, q)?.value;
        }
    }
    Ok(total)
}

/// `y` as a function of `v` for the given parameters.
#[inline]
pub(crate) fn y_of(p: &NtleParams, pt: &VPoint) -> f64 {
    softplus(pt.ln_u() / p.beta()) / p.lambda()
}

/// Probability element `1 + δ - 2δv` in `v`.
#[inline]
pub(crate) fn weight(p: &NtleParams, pt: &VPoint) -> f64 {
    let d = p.delta();
    (1.0 + d) * pt.w + (1.0 - d) * pt.v
}
