use serde::{Deserialize, Serialize};
use statrs::function::beta::ln_beta;

use super::{integrate_v, weight, VBound};
use crate::error::{NtleError, Result};
use crate::numeric::softplus;
use crate::quadrature::QuadratureSpec;
use crate::NtleParams;

/// Shannon entropy (nats) together with its two non-elementary pieces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyResult {
    pub value: f64,
    /// `∫₀¹ (1+δ-2δv) ln(1 + (v/(1-v))^{1/β}) dv`
    pub j_term: f64,
    /// `∫₀¹ (1+δ-2δv) ln(1+δ-2δv) dv`
    pub k_term: f64,
}

const K_SERIES_CUTOFF: f64 = 1e-3;

/// `K_δ = ((1+δ)² ln(1+δ) - (1-δ)² ln(1-δ)) / (4δ) - 1/2`.
///
/// For `|δ| ≤ 1e-3` the series `δ²/6 + δ⁴/60 + δ⁶/210` replaces the closed
/// form, which cancels catastrophically near zero.
pub fn k_delta(delta: f64) -> Result<f64> {
    if !(delta > -1.0 && delta < 1.0) {
        return Err(NtleError::domain(format!("delta must lie in (-1, 1), got {delta}")));
    }
    if delta.abs() <= K_SERIES_CUTOFF {
        let d2 = delta * delta;
        return Ok(d2 * (1.0 / 6.0 + d2 * (1.0 / 60.0 + d2 / 210.0)));
    }
    let a = 1.0 + delta;
    let b = 1.0 - delta;
    Ok((a * a * a.ln() - b * b * b.ln()) / (4.0 * delta) - 0.5)
}

/// Shannon entropy `H = 2 - ln(βλ) - δ/β - j_{β,δ} - K_δ`.
pub fn shannon_entropy(p: &NtleParams, q: &QuadratureSpec) -> Result<EntropyResult> {
    let beta = p.beta();
    let j_term = integrate_v(
        |pt| weight(p, &pt) * softplus(pt.ln_u() / beta),
        VBound::ZERO,
        VBound::ONE,
        q,
    )?;
    let k_term = k_delta(p.delta())?;
    let value = 2.0 - (beta * p.lambda()).ln() - p.delta() / beta - j_term - k_term;
    Ok(EntropyResult { value, j_term, k_term })
}

fn ln_binomial(n: u32, k: u32) -> f64 {
    statrs::function::factorial::ln_binomial(n as u64, k as u64)
}

/// Rényi entropy of integer order `m ≥ 2` from the finite double sum of beta
/// functions.
pub fn renyi_entropy_integer(p: &NtleParams, m: u32) -> Result<f64> {
    if m < 2 {
        return Err(NtleError::domain(format!("integer Rényi order must be at least 2, got {m}")));
    }
    let (lambda, beta, delta) = (p.lambda(), p.beta(), p.delta());
    let mf = m as f64;
    let mut sum = 0.0;
    for j in 0..m {
        for k in 0..=m {
            let shift = ((mf - 1.0) * (beta - 1.0) + j as f64) / beta;
            let a = 1.0 + k as f64 + shift;
            let b = 3.0 * mf - 1.0 - k as f64 - shift;
            if !(a > 0.0 && b > 0.0) {
                return Err(NtleError::Precondition(format!(
                    "beta-function arguments ({a}, {b}) not positive at (j={j}, k={k}) for {p}, m={m}"
                )));
            }
            let ln_term = ln_binomial(m - 1, j)
                + ln_binomial(m, k)
                + (m - k) as f64 * (1.0 + delta).ln()
                + k as f64 * (1.0 - delta).ln()
                + ln_beta(a, b);
            sum += ln_term.exp();
        }
    }
    let ln_integral = sum.ln() + (mf - 1.0) * (beta * lambda).ln();
    Ok(ln_integral / (1.0 - mf))
}

/// Rényi entropy of any order `ρ > 0, ρ ≠ 1` by quadrature of `∫ g^ρ dy`.
///
/// Near the origin `g^ρ ~ y^{ρ(β-1)}`, so the integral diverges when
/// `ρ(β - 1) ≤ -1`; that case is reported rather than integrated.
pub fn renyi_entropy_numeric(p: &NtleParams, rho: f64, q: &QuadratureSpec) -> Result<f64> {
    if !(rho > 0.0 && rho.is_finite()) || rho == 1.0 {
        return Err(NtleError::domain(format!("Rényi order must be positive and != 1, got {rho}")));
    }
    let (lambda, beta, delta) = (p.lambda(), p.beta(), p.delta());
    if rho * (beta - 1.0) <= -1.0 {
        return Err(NtleError::Divergence(format!(
            "∫ g^ρ dy diverges at the origin: ρ(β-1) = {} ≤ -1",
            rho * (beta - 1.0)
        )));
    }
    // g^ρ dy in v: (βλ)^{ρ-1} u^{(β-1)(ρ-1)/β} (1+u^{1/β})^{ρ-1} (1+δ-2δv)^ρ (1-v)^{2ρ-2} dv
    let c = (rho - 1.0) * (beta * lambda).ln();
    let expo = (beta - 1.0) * (rho - 1.0) / beta;
    let integral = integrate_v(
        |pt| {
            let ln_u = pt.ln_u();
            let ln_w = 1.0 + delta - 2.0 * delta * pt.v;
            let l = c + expo * ln_u + (rho - 1.0) * softplus(ln_u / beta) + rho * ln_w.ln() + (2.0 * rho - 2.0) * pt.ln_w;
            l.exp()
        },
        VBound::ZERO,
        VBound::ONE,
        q,
    )?;
    Ok(integral.ln() / (1.0 - rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate;
    use std::f64::consts::{E, LN_2};

    fn p(l: f64, b: f64, d: f64) -> NtleParams {
        NtleParams::new(l, b, d).unwrap()
    }

    /// Defining integral of K_δ, independent of the closed form.
    fn k_oracle(d: f64) -> f64 {
        let q = QuadratureSpec::default();
        integrate(|v| {
            let t = 1.0 + d - 2.0 * d * v;
            t * t.ln()
        }, 0.0, 1.0, &q)
        .unwrap()
        .value
    }

    #[test]
    fn k_delta_examples() {
        assert_eq!(k_delta(0.0).unwrap(), 0.0);
        let k = k_delta(0.5).unwrap();
        assert!((k - 0.04279164419).abs() < 1e-10, "{k}");
        assert!((k - k_oracle(0.5)).abs() < 1e-12);
        assert!((k_delta(-0.5).unwrap() - k_oracle(-0.5)).abs() < 1e-12);
        assert!((k_delta(-0.5).unwrap() - k).abs() < 1e-15);
        assert!(k_delta(1.0).is_err());
    }

    #[test]
    fn k_delta_series_branch_is_continuous() {
        let inside = k_delta(K_SERIES_CUTOFF).unwrap();
        let outside = k_delta(K_SERIES_CUTOFF * (1.0 + 1e-9)).unwrap();
        assert!((inside - outside).abs() < 1e-13, "{inside} {outside}");
        for d in [1e-4, -1e-4, 5e-4] {
            assert!((k_delta(d).unwrap() - k_oracle(d)).abs() < 1e-14);
        }
    }

    #[test]
    fn shannon_exponential_reductions() {
        let q = QuadratureSpec::default();
        let h = shannon_entropy(&p(1.0, 1.0, 0.0), &q).unwrap();
        assert!((h.value - 1.0).abs() < 1e-9, "{h:?}");
        assert!((h.j_term - 1.0).abs() < 1e-9);
        assert_eq!(h.k_term, 0.0);
        let h = shannon_entropy(&p(E, 1.0, 0.0), &q).unwrap();
        assert!(h.value.abs() < 1e-9);
    }

    #[test]
    fn entropy_assembly_identity() {
        let q = QuadratureSpec::default();
        let pp = p(0.7, 2.3, -0.35);
        let h = shannon_entropy(&pp, &q).unwrap();
        let assembled = 2.0 - (pp.beta() * pp.lambda()).ln() - pp.delta() / pp.beta() - h.j_term - h.k_term;
        assert!((h.value - assembled).abs() < 1e-12);
    }

    #[test]
    fn renyi_integer_exponential() {
        let r2 = renyi_entropy_integer(&p(1.0, 1.0, 0.0), 2).unwrap();
        assert!((r2 - LN_2).abs() < 1e-12);
        let r3 = renyi_entropy_integer(&p(1.0, 1.0, 0.0), 3).unwrap();
        assert!((r3 - 3f64.ln() / 2.0).abs() < 1e-12);
        assert!(renyi_entropy_integer(&p(1.0, 1.0, 0.0), 1).is_err());
    }

    #[test]
    fn renyi_integer_precondition_names_offender() {
        // m(β-1) ≤ -1 makes the (0,0) term's first argument nonpositive
        let err = renyi_entropy_integer(&p(1.0, 0.3, 0.0), 3).unwrap_err();
        match err {
            NtleError::Precondition(msg) => assert!(msg.contains("j=0, k=0"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn renyi_numeric_examples() {
        let q = QuadratureSpec::default();
        let e = p(1.0, 1.0, 0.0);
        assert!((renyi_entropy_numeric(&e, 2.0, &q).unwrap() - LN_2).abs() < 1e-10);
        assert!((renyi_entropy_numeric(&e, 0.5, &q).unwrap() - 2.0 * LN_2).abs() < 1e-10);
        assert!(renyi_entropy_numeric(&e, 1.0, &q).is_err());
        assert!(matches!(
            renyi_entropy_numeric(&p(1.0, 0.4, 0.0), 2.0, &q),
            Err(NtleError::Divergence(_))
        ));
    }
}
