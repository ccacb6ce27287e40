use serde::{Deserialize, Serialize};

use super::{integrate_v, weight, y_of, VBound};
use crate::error::{NtleError, Result};
use crate::quadrature::QuadratureSpec;
use crate::NtleParams;

fn same(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

/// `R = P(stress < strength)` for independent NTLE variables.
///
/// With common `λ` and `β` this is `1/2 + (δ_stress - δ_strength)/6`;
/// otherwise [`stress_strength_integral`] is evaluated.
pub fn stress_strength(strength: &NtleParams, stress: &NtleParams, q: &QuadratureSpec) -> Result<f64> {
    if same(strength.lambda(), stress.lambda()) && same(strength.beta(), stress.beta()) {
        return Ok(0.5 + (stress.delta() - strength.delta()) / 6.0);
    }
    stress_strength_integral(strength, stress, q)
}

/// `∫ G_stress(x) g_strength(x) dx`, integrated in the strength
/// variable's `v` coordinate where `g dx = (1 + δ - 2δv) dv`.
pub fn stress_strength_integral(strength: &NtleParams, stress: &NtleParams, q: &QuadratureSpec) -> Result<f64> {
    integrate_v(
        |pt| {
            let x = y_of(strength, &pt);
            let g_stress = stress.cdf(x).unwrap_or(1.0);
            g_stress * weight(strength, &pt)
        },
        VBound::ZERO,
        VBound::ONE,
        q,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderingBasis {
    /// `λ₁ ≥ λ₂` and `δ₁ ≥ δ₂` with common `β`.
    SufficientCondition,
    /// CDFs compared on a 10⁴-point grid; evidence, not proof.
    GridCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingResult {
    pub holds: bool,
    pub basis: OrderingBasis,
}

const ORDERING_GRID: usize = 10_000;

/// Whether `Y₁ ≤_st Y₂`, i.e. `G₁(y) ≥ G₂(y)` for all `y`. Requires a common `β`.
pub fn stochastically_leq(p1: &NtleParams, p2: &NtleParams) -> Result<OrderingResult> {
    if !same(p1.beta(), p2.beta()) {
        return Err(NtleError::Precondition(format!(
            "stochastic ordering needs a common beta, got {} and {}",
            p1.beta(),
            p2.beta()
        )));
    }
    if p1.lambda() >= p2.lambda() && p1.delta() >= p2.delta() {
        return Ok(OrderingResult {
            holds: true,
            basis: OrderingBasis::SufficientCondition,
        });
    }
    let top = p1.quantile(1.0 - 1e-9)?.max(p2.quantile(1.0 - 1e-9)?);
    let mut holds = true;
    for i in 1..=ORDERING_GRID {
        let y = top * i as f64 / ORDERING_GRID as f64;
        if p1.cdf(y)? < p2.cdf(y)? - 1e-12 {
            holds = false;
            break;
        }
    }
    Ok(OrderingResult {
        holds,
        basis: OrderingBasis::GridCheck,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(l: f64, b: f64, d: f64) -> NtleParams {
        NtleParams::new(l, b, d).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let q = QuadratureSpec::default();
        let r = stress_strength(&p(1.0, 1.5, 0.2), &p(1.0, 1.5, 0.2), &q).unwrap();
        assert_eq!(r, 0.5);
        let r = stress_strength(&p(1.0, 1.5, -0.5), &p(1.0, 1.5, 0.5), &q).unwrap();
        assert!((r - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn general_integral_agrees_with_closed_form() {
        let q = QuadratureSpec::default();
        for &(d1, d2) in &[(-0.5, 0.5), (0.3, -0.8), (0.0, 0.0)] {
            let a = p(0.8, 2.1, d1);
            let b = p(0.8, 2.1, d2);
            let closed = stress_strength(&a, &b, &q).unwrap();
            let general = stress_strength_integral(&a, &b, &q).unwrap();
            assert!((closed - general).abs() < 1e-8, "{closed} vs {general}");
        }
    }

    #[test]
    fn exponential_pair() {
        // P(Y < X) for X ~ Exp(1), Y ~ Exp(2) is 2/3
        let q = QuadratureSpec::default();
        let r = stress_strength(&p(1.0, 1.0, 0.0), &p(2.0, 1.0, 0.0), &q).unwrap();
        assert!((r - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn ordering_examples() {
        let r = stochastically_leq(&p(2.0, 1.0, 0.5), &p(1.0, 1.0, 0.0)).unwrap();
        assert_eq!(r, OrderingResult { holds: true, basis: OrderingBasis::SufficientCondition });
        let a = p(1.3, 0.8, 0.1);
        assert!(stochastically_leq(&a, &a).unwrap().holds);
        let r = stochastically_leq(&p(1.0, 1.0, -0.5), &p(1.0, 1.0, 0.5)).unwrap();
        assert_eq!(r, OrderingResult { holds: false, basis: OrderingBasis::GridCheck });
        assert!(matches!(
            stochastically_leq(&p(1.0, 1.0, 0.0), &p(1.0, 2.0, 0.0)),
            Err(NtleError::Precondition(_))
        ));
    }

    #[test]
    fn grid_check_can_confirm_ordering() {
        // λ₁ < λ₂ but a much larger δ₁; the grid decides
        let r = stochastically_leq(&p(0.99, 1.0, 0.9), &p(1.0, 1.0, -0.9)).unwrap();
        assert_eq!(r.basis, OrderingBasis::GridCheck);
        assert!(r.holds);
    }
}
