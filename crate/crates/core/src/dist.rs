//! The NTLE distribution: parameters and pointwise functions.
//!
//! With `x = e^{λy} - 1` and `u = x^β`, the CDF is
//! `G(y) = u (1 + δ + u) / (1 + u)^2`. Everything here is evaluated through
//! `s = ln u = β ln(e^{λy} - 1)` and the logistic coordinate
//! `v = u / (1 + u) = logistic(s)`, in which
//!
//! ```text
//! G(y) = v (1 + δ (1 - v))
//! S(y) = (1 - v)(1 - δ v)
//! g(y) = βλ v (1 - v)(1 + δ - 2δv) / (1 - e^{-λy})
//! ```
//!
//! Both `v` and `1 - v` are produced directly from `s`, so neither tail loses
//! precision and nothing overflows for large `λy`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{NtleError, Result};
use crate::numeric::{ln_expm1, log_add_exp, logistic, softplus};
use crate::rng;

/// Parameter triple `(λ, β, δ)`: rate, shape and transmutation weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct NtleParams {
    lambda: f64,
    beta: f64,
    delta: f64,
}

#[derive(Deserialize)]
struct RawParams {
    lambda: f64,
    beta: f64,
    delta: f64,
}

impl TryFrom<RawParams> for NtleParams {
    type Error = NtleError;
    fn try_from(r: RawParams) -> Result<Self> {
        NtleParams::new(r.lambda, r.beta, r.delta)
    }
}

impl fmt::Display for NtleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(λ={}, β={}, δ={})", self.lambda, self.beta, self.delta)
    }
}

/// The substitution variable `u = (e^{λy} - 1)^β`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct UCoord(f64);

impl UCoord {
    pub fn new(u: f64) -> Result<Self> {
        if u.is_nan() || u < 0.0 {
            return Err(NtleError::domain(format!("u must be nonnegative, got {u}")));
        }
        Ok(UCoord(u))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeKind {
    BoundaryAtZero,
    Interior,
    UnboundedAtZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeResult {
    pub location: f64,
    pub kind: ModeKind,
}

/// Logistic coordinates of a point `y > 0`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Coords {
    /// `ln u`
    pub s: f64,
    /// `u / (1 + u)`
    pub v: f64,
    /// `1 / (1 + u)`
    pub w: f64,
}

impl NtleParams {
    pub fn new(lambda: f64, beta: f64, delta: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(NtleError::domain(format!("lambda must be finite and > 0, got {lambda}")));
        }
        if !beta.is_finite() || beta <= 0.0 {
            return Err(NtleError::domain(format!("beta must be finite and > 0, got {beta}")));
        }
        if !delta.is_finite() || delta <= -1.0 || delta >= 1.0 {
            return Err(NtleError::domain(format!("delta must lie in (-1, 1), got {delta}")));
        }
        Ok(Self { lambda, beta, delta })
    }

    /// Exponential(λ) as the member with β = 1, δ = 0.
    pub fn exponential(lambda: f64) -> Result<Self> {
        Self::new(lambda, 1.0, 0.0)
    }

    /// Logistic-exponential(λ, β) as the member with δ = 0.
    pub fn logistic_exponential(lambda: f64, beta: f64) -> Result<Self> {
        Self::new(lambda, beta, 0.0)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.lambda, self.beta, self.delta]
    }

    #[inline]
    pub(crate) fn coords(&self, y: f64) -> Coords {
        let s = self.beta * ln_expm1(self.lambda * y);
        Coords {
            s,
            v: logistic(s),
            w: logistic(-s),
        }
    }

    fn check_support(y: f64) -> Result<()> {
        if y.is_nan() || y < 0.0 {
            return Err(NtleError::domain(format!("y must be nonnegative, got {y}")));
        }
        Ok(())
    }

    /// Density. At `y = 0` with `β < 1` the density is unbounded and
    /// `f64::INFINITY` is returned.
    pub fn pdf(&self, y: f64) -> Result<f64> {
        Self::check_support(y)?;
        if y == 0.0 {
            return Ok(if self.beta < 1.0 {
                f64::INFINITY
            } else if self.beta == 1.0 {
                self.lambda * (1.0 + self.delta)
            } else {
                0.0
            });
        }
        if y == f64::INFINITY {
            return Ok(0.0);
        }
        let c = self.coords(y);
        let d = self.delta;
        let value = self.beta * self.lambda * c.v * c.w * (1.0 + d - 2.0 * d * c.v) / -(-self.lambda * y).exp_m1();
        Ok(value)
    }

    /// Log-density for `y > 0`, evaluated term by term in log space.
    pub fn log_pdf(&self, y: f64) -> Result<f64> {
        if y.is_nan() || y <= 0.0 {
            return Err(NtleError::domain(format!("log_pdf requires y > 0, got {y}")));
        }
        let z = self.lambda * y;
        let ln_x = ln_expm1(z);
        let s = self.beta * ln_x;
        let bracket = log_add_exp((1.0 + self.delta).ln(), (1.0 - self.delta).ln() + s);
        let value = self.beta.ln() + self.lambda.ln() + z + (self.beta - 1.0) * ln_x + bracket - 3.0 * softplus(s);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(NtleError::NonFinite(format!("log_pdf at y={y} for {self}")))
        }
    }

    pub fn cdf(&self, y: f64) -> Result<f64> {
        Self::check_support(y)?;
        if y == 0.0 {
            return Ok(0.0);
        }
        let c = self.coords(y);
        Ok(c.v * (1.0 + self.delta * c.w))
    }

    pub fn survival(&self, y: f64) -> Result<f64> {
        Self::check_support(y)?;
        if y == 0.0 {
            return Ok(1.0);
        }
        let c = self.coords(y);
        Ok(c.w * (1.0 - self.delta * c.v))
    }

    /// `ln G(y)` for `y > 0`.
    pub fn ln_cdf(&self, y: f64) -> Result<f64> {
        Self::check_support(y)?;
        if y == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        let c = self.coords(y);
        Ok(-softplus(-c.s) + (self.delta * c.w).ln_1p())
    }

    /// `ln S(y)` for `y > 0`.
    pub fn ln_survival(&self, y: f64) -> Result<f64> {
        Self::check_support(y)?;
        if y == 0.0 {
            return Ok(0.0);
        }
        let c = self.coords(y);
        Ok(-softplus(c.s) + (-self.delta * c.v).ln_1p())
    }

    /// Hazard `g / S`, computed in the cancelled form
    /// `βλ v (1 + δ - 2δv) / ((1 - δv)(1 - e^{-λy}))`, which stays finite in
    /// the far tail where `S` itself underflows.
    pub fn hazard(&self, y: f64) -> Result<f64> {
        if y.is_nan() || y <= 0.0 {
            return Err(NtleError::domain(format!("hazard requires y > 0, got {y}")));
        }
        let c = self.coords(y);
        let d = self.delta;
        let value = self.beta * self.lambda * c.v * (1.0 + d - 2.0 * d * c.v)
            / ((1.0 - d * c.v) * -(-self.lambda * y).exp_m1());
        if value.is_finite() {
            Ok(value)
        } else {
            Err(NtleError::TailOverflow(format!("hazard at y={y} for {self}")))
        }
    }

    pub fn to_u(&self, y: f64) -> Result<UCoord> {
        Self::check_support(y)?;
        if y == 0.0 {
            return Ok(UCoord(0.0));
        }
        Ok(UCoord((self.beta * ln_expm1(self.lambda * y)).exp()))
    }

    /// Inverse of [`to_u`](Self::to_u): `y = ln(1 + u^{1/β}) / λ`.
    pub fn from_u(&self, u: UCoord) -> f64 {
        if u.0 == 0.0 {
            return 0.0;
        }
        self.y_from_ln_u(u.0.ln())
    }

    #[inline]
    pub(crate) fn y_from_ln_u(&self, ln_u: f64) -> f64 {
        softplus(ln_u / self.beta) / self.lambda
    }

    /// Quantile function.
    ///
    /// In `v = u/(1+u)` the CDF equation is the quadratic
    /// `δv² - (1+δ)v + p = 0`; its root in `(0,1)` and the matching root of
    /// the survival quadratic for `1 - v` are taken in conjugate form, so
    /// `δ = 0` and both tails are exact.
    pub fn quantile(&self, prob: f64) -> Result<f64> {
        if !(prob > 0.0 && prob < 1.0) {
            return Err(NtleError::domain(format!("probability must lie in (0, 1), got {prob}")));
        }
        let (v, w) = self.v_at_prob(prob);
        Ok(self.y_from_ln_u(v.ln() - w.ln()))
    }

    /// `(v, 1 - v)` solving `G = prob`.
    pub(crate) fn v_at_prob(&self, prob: f64) -> (f64, f64) {
        let d = self.delta;
        let q = 1.0 - prob;
        let v = 2.0 * prob / ((1.0 + d) + ((1.0 + d) * (1.0 + d) - 4.0 * d * prob).max(0.0).sqrt());
        let w = 2.0 * q / ((1.0 - d) + ((1.0 - d) * (1.0 - d) + 4.0 * d * q).max(0.0).sqrt());
        (v, w)
    }

    /// `n` inverse-transform draws from a `ChaCha8` stream seeded with `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(NtleError::domain("sample size must be at least 1"));
        }
        Ok(self.sample_with(&mut rng::stream(seed), n))
    }

    pub fn sample_with<R: Rng>(&self, rng: &mut R, n: usize) -> Vec<f64> {
        (0..n)
            .map(|_| {
                let u: f64 = rng.sample(rand::distr::Open01);
                self.quantile(u).expect("open-interval uniform")
            })
            .collect()
    }

    /// Mode of the density.
    pub fn mode(&self) -> Result<ModeResult> {
        let (lambda, beta, delta) = (self.lambda, self.beta, self.delta);
        if beta < 1.0 {
            return Ok(ModeResult {
                location: 0.0,
                kind: ModeKind::UnboundedAtZero,
            });
        }
        if beta == 1.0 {
            return Ok(if delta < -1.0 / 3.0 {
                ModeResult {
                    location: (-4.0 * delta / (1.0 - delta)).ln() / lambda,
                    kind: ModeKind::Interior,
                }
            } else {
                ModeResult {
                    location: 0.0,
                    kind: ModeKind::BoundaryAtZero,
                }
            });
        }
        let x = self.modal_root()?;
        Ok(ModeResult {
            location: x.ln_1p() / lambda,
            kind: ModeKind::Interior,
        })
    }

    /// `x · dℓ/dx` for the log-density in `x = e^{λy} - 1`; same sign as the
    /// modal equation, but bounded as `x` runs over `(0, ∞)`.
    fn scaled_modal_equation(&self, x: f64) -> f64 {
        let (beta, delta) = (self.beta, self.delta);
        let bl = beta * x.ln();
        x / (1.0 + x) + (beta - 1.0) + beta * logistic(bl + ((1.0 - delta) / (1.0 + delta)).ln())
            - 3.0 * beta * logistic(bl)
    }

    /// Log-density in `x`, up to the constant `ln(βλ)`.
    fn log_density_in_x(&self, x: f64) -> f64 {
        let (beta, delta) = (self.beta, self.delta);
        let bl = beta * x.ln();
        x.ln_1p() + (beta - 1.0) * x.ln() + log_add_exp((1.0 + delta).ln(), (1.0 - delta).ln() + bl)
            - 3.0 * softplus(bl)
    }

    fn modal_root(&self) -> Result<f64> {
        // geometric grid over [1e-12, 1e12], 20 points per decade
        let grid: Vec<f64> = (0..=480).map(|k| 10f64.powf(-12.0 + k as f64 / 20.0)).collect();
        let mut best: Option<(f64, f64)> = None;
        let mut prev = (grid[0], self.scaled_modal_equation(grid[0]));
        for &x in &grid[1..] {
            let f = self.scaled_modal_equation(x);
            if prev.1 > 0.0 && f <= 0.0 {
                let root = self.bisect(prev.0, x);
                let height = self.log_density_in_x(root);
                if best.is_none_or(|(_, h)| height > h) {
                    best = Some((root, height));
                }
            }
            prev = (x, f);
        }
        best.map(|(r, _)| r).ok_or_else(|| {
            NtleError::numerical(format!("mode root search did not bracket a root in [1e-12, 1e12] for {self}"), f64::NAN)
        })
    }

    fn bisect(&self, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = (lo * hi).sqrt();
            if mid <= lo || mid >= hi || (hi - lo) <= 1e-15 * hi {
                break;
            }
            if self.scaled_modal_equation(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if self.scaled_modal_equation(lo).abs() < self.scaled_modal_equation(hi).abs() {
            lo
        } else {
            hi
        }
    }
}
