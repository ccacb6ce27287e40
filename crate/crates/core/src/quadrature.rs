//! Globally adaptive Gauss-Kronrod (7/15 point) quadrature.
//!
//! The interval with the largest error estimate is bisected until the summed
//! estimate falls below `max(abs_tol, rel_tol * |integral|)`. Rules never
//! evaluate the integrand at interval endpoints, so integrable endpoint
//! singularities (log or algebraic) are handled by subdivision.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{NtleError, Result};

/// Tolerances and subdivision budget for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(NtleError::domain("abs_tol must be positive and finite"));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(NtleError::domain("rel_tol must be positive and finite"));
        }
        if self.max_subdivisions < 10 {
            return Err(NtleError::domain("max_subdivisions must be at least 10"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 15-point Kronrod evaluation; returns (integral, error, |f| integral).
fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resk = fc * WGK[7];
    let mut resg = fc * WG[3];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let result = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (result, err, resabs)
}

/// Integrate `f` over the finite interval `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral> {
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(NtleError::domain("integration limits must be finite"));
    }
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error_estimate: 0.0,
            subdivisions: 0,
        });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

    let (v0, e0, abs0) = qk15(&f, lo, hi);
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        a: lo,
        b: hi,
        value: v0,
        error: e0,
        abs: abs0,
    });
    let mut total = v0;
    let mut total_err = e0;
    let mut total_abs = abs0;
    // Segments too narrow to split further.
    let mut frozen_err = 0.0;
    let mut subdivisions = 0;

    loop {
        if !total.is_finite() || !total_err.is_finite() {
            return Err(NtleError::numerical("adaptive quadrature (non-finite integrand)", total_err));
        }
        let tol = spec.abs_tol.max(spec.rel_tol * total.abs());
        let roundoff = 50.0 * f64::EPSILON * total_abs;
        if total_err <= tol.max(roundoff) {
            return Ok(Integral {
                value: sign * total,
                error_estimate: total_err,
                subdivisions,
            });
        }
        let Some(seg) = heap.pop() else {
            // Everything frozen: accept if the frozen error is at roundoff level.
            if frozen_err <= tol.max(roundoff) * 10.0 {
                return Ok(Integral {
                    value: sign * total,
                    error_estimate: total_err,
                    subdivisions,
                });
            }
            return Err(NtleError::numerical("adaptive quadrature (no refinable interval)", total_err));
        };
        if subdivisions >= spec.max_subdivisions {
            return Err(NtleError::numerical("adaptive quadrature (subdivision limit)", total_err));
        }
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b || (seg.b - seg.a) <= 4.0 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE) {
            frozen_err += seg.error;
            continue;
        }
        let (v1, e1, a1) = qk15(&f, seg.a, mid);
        let (v2, e2, a2) = qk15(&f, mid, seg.b);
        subdivisions += 1;
        total += v1 + v2 - seg.value;
        total_err += e1 + e2 - seg.error;
        total_abs += a1 + a2 - seg.abs;
        heap.push(Segment {
            a: seg.a,
            b: mid,
            value: v1,
            error: e1,
            abs: a1,
        });
        heap.push(Segment {
            a: mid,
            b: seg.b,
            value: v2,
            error: e2,
            abs: a2,
        });
    }
}

/// Integrate `f` over `[a, inf)` through the map `x = a + t / (1 - t)`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, spec: &QuadratureSpec) -> Result<Integral> {
    if !a.is_finite() {
        return Err(NtleError::domain("lower limit must be finite"));
    }
    let g = |t: f64| {
        let one_minus = 1.0 - t;
        let x = a + t / one_minus;
        let jac = 1.0 / (one_minus * one_minus);
        let fx = f(x);
        if fx == 0.0 || !x.is_finite() {
            0.0
        } else {
            fx * jac
        }
    };
    integrate(g, 0.0, 1.0, spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let q = QuadratureSpec::default();
        let r = integrate(|x| 3.0 * x * x, 0.0, 2.0, &q).unwrap();
        assert!((r.value - 8.0).abs() < 1e-13);
    }

    #[test]
    fn reversed_limits_change_sign() {
        let q = QuadratureSpec::default();
        let r = integrate(|x: f64| x.cos(), 1.0, 0.0, &q).unwrap();
        assert!((r.value + 1f64.sin()).abs() < 1e-13);
    }

    #[test]
    fn log_endpoint_singularity() {
        // integral of ln v over (0,1) is -1
        let q = QuadratureSpec::default();
        let r = integrate(|v: f64| v.ln(), 0.0, 1.0, &q).unwrap();
        assert!((r.value + 1.0).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn algebraic_endpoint_singularity() {
        // integral of x^-0.5 over (0,1) is 2
        let q = QuadratureSpec::default();
        let r = integrate(|x: f64| x.powf(-0.5), 0.0, 1.0, &q).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn semi_infinite_exponential() {
        let q = QuadratureSpec::default();
        let r = integrate_to_infinity(|x: f64| (-x).exp(), 0.0, &q).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_reports_error_estimate() {
        let q = QuadratureSpec::new(1e-300, 1e-300, 10).unwrap();
        let err = integrate(|x: f64| (1.0 / x).sin(), 1e-6, 1.0, &q).unwrap_err();
        match err {
            NtleError::NumericalFailure { error_estimate, .. } => assert!(error_estimate > 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(0.0, 1e-8, 100).is_err());
        assert!(QuadratureSpec::new(1e-8, 1e-8, 5).is_err());
    }
}
