//! Posterior means by component-wise random-walk Metropolis–Hastings.
//!
//! The chain runs in `(ln λ, ln β, η)` with `δ = tanh η`. Priors are
//! `λ ~ Gamma(a_λ, b_λ)`, `β ~ Gamma(a_β, b_β)` and `η ~ N(0, 1)`; the log
//! transforms contribute the Jacobians `λ` and `β`.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::criteria::log_likelihood_values;
use super::mle::fit_mle;
use super::{EstimationMethod, FitResult, Sample};
use crate::error::{NtleError, Result};
use crate::rng;
use crate::NtleParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BayesConfig {
    pub prior_shape_lambda: f64,
    pub prior_rate_lambda: f64,
    pub prior_shape_beta: f64,
    pub prior_rate_beta: f64,
    pub iterations: usize,
    pub burn_in: usize,
    /// Initial random-walk scales for `(ln λ, ln β, η)`.
    pub proposal_scales: [f64; 3],
    /// Tune the scales toward 0.3 acceptance during burn-in.
    pub adapt: bool,
    pub seed: u64,
}

impl Default for BayesConfig {
    fn default() -> Self {
        Self {
            prior_shape_lambda: 1.0,
            prior_rate_lambda: 0.5,
            prior_shape_beta: 1.0,
            prior_rate_beta: 0.5,
            iterations: 10_000,
            burn_in: 2_000,
            proposal_scales: [0.1, 0.1, 0.2],
            adapt: true,
            seed: 0,
        }
    }
}

impl BayesConfig {
    pub fn validate(&self) -> Result<()> {
        let priors = [
            ("prior_shape_lambda", self.prior_shape_lambda),
            ("prior_rate_lambda", self.prior_rate_lambda),
            ("prior_shape_beta", self.prior_shape_beta),
            ("prior_rate_beta", self.prior_rate_beta),
        ];
        for (name, v) in priors {
            if !(v > 0.0 && v.is_finite()) {
                return Err(NtleError::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if self.burn_in >= self.iterations {
            return Err(NtleError::Config(format!(
                "burn_in ({}) must be smaller than iterations ({})",
                self.burn_in, self.iterations
            )));
        }
        if self.proposal_scales.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
            return Err(NtleError::Config("proposal_scales must be positive".into()));
        }
        Ok(())
    }
}

/// Chain summaries attached to a Bayes fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BayesDiagnostics {
    /// Post-burn-in acceptance rate per coordinate `(ln λ, ln β, η)`.
    pub acceptance: [f64; 3],
    pub final_scales: [f64; 3],
    pub posterior_sd: [f64; 3],
    /// Batch-means Monte Carlo standard errors of the posterior means.
    pub mcse: [f64; 3],
    pub kept_draws: usize,
}

const TARGET_ACCEPTANCE: f64 = 0.3;
const ADAPT_BATCH: usize = 50;

struct Target<'a> {
    ys: &'a [f64],
    cfg: &'a BayesConfig,
}

impl Target<'_> {
    fn log_posterior(&self, z: &[f64; 3]) -> f64 {
        let delta = z[2].tanh();
        let Ok(p) = NtleParams::new(z[0].exp(), z[1].exp(), delta) else {
            return f64::NEG_INFINITY;
        };
        let ll = log_likelihood_values(&p, self.ys);
        let c = self.cfg;
        let lp = c.prior_shape_lambda * z[0] - c.prior_rate_lambda * p.lambda() + c.prior_shape_beta * z[1]
            - c.prior_rate_beta * p.beta()
            - 0.5 * z[2] * z[2];
        let v = ll + lp;
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    }
}

fn to_params(z: &[f64; 3]) -> Option<NtleParams> {
    NtleParams::new(z[0].exp(), z[1].exp(), z[2].tanh()).ok()
}

/// Posterior-mean estimate; the chain starts at the maximum likelihood fit.
pub fn fit_bayes(s: &Sample, cfg: &BayesConfig) -> Result<FitResult> {
    let start = fit_mle(s).params;
    fit_bayes_from(s, cfg, &start)
}

/// Posterior-mean estimate with the chain started at `start`.
pub fn fit_bayes_from(s: &Sample, cfg: &BayesConfig, start: &NtleParams) -> Result<FitResult> {
    cfg.validate()?;
    let target = Target { ys: s.values(), cfg };
    let mut rng = rng::stream(cfg.seed);
    let mut z = [start.lambda().ln(), start.beta().ln(), start.delta().atanh()];
    let mut lp = target.log_posterior(&z);
    if !lp.is_finite() {
        return Err(NtleError::numerical("posterior at the chain start", f64::NAN));
    }
    let mut scales = cfg.proposal_scales;
    let mut batch_acc = [0usize; 3];
    let mut kept_acc = [0usize; 3];
    let kept = cfg.iterations - cfg.burn_in;
    let mut draws: Vec<[f64; 3]> = Vec::with_capacity(kept);
    for it in 0..cfg.iterations {
        for c in 0..3 {
            let step: f64 = rng.sample(StandardNormal);
            let mut prop = z;
            prop[c] += scales[c] * step;
            let lp_prop = target.log_posterior(&prop);
            let u: f64 = rng.random();
            if lp_prop.is_finite() && u.ln() < lp_prop - lp {
                z = prop;
                lp = lp_prop;
                if it < cfg.burn_in {
                    batch_acc[c] += 1;
                } else {
                    kept_acc[c] += 1;
                }
            }
        }
        if it < cfg.burn_in && cfg.adapt && (it + 1) % ADAPT_BATCH == 0 {
            for c in 0..3 {
                let rate = batch_acc[c] as f64 / ADAPT_BATCH as f64;
                scales[c] *= (2.0 * (rate - TARGET_ACCEPTANCE)).exp();
                batch_acc[c] = 0;
            }
        }
        if it >= cfg.burn_in {
            let p = to_params(&z).expect("accepted states are valid");
            draws.push(p.as_array());
        }
    }
    let acceptance = kept_acc.map(|a| a as f64 / kept as f64);
    let mut mean = [0.0; 3];
    let mut sd = [0.0; 3];
    let mut mcse = [0.0; 3];
    let mut ci = [[0.0; 2]; 3];
    for c in 0..3 {
        let mut col: Vec<f64> = draws.iter().map(|d| d[c]).collect();
        mean[c] = crate::numeric::mean(&col);
        sd[c] = crate::numeric::sample_std(&col);
        mcse[c] = batch_means_se(&col);
        col.sort_by(f64::total_cmp);
        ci[c] = [empirical_quantile(&col, 0.025), empirical_quantile(&col, 0.975)];
    }
    let mean_delta = mean[2].clamp(-1.0 + 1e-12, 1.0 - 1e-12);
    let params = NtleParams::new(mean[0], mean[1], mean_delta)?;
    let healthy = acceptance.iter().all(|a| (0.05..=0.7).contains(a));
    let objective = log_likelihood_values(&params, s.values());
    let mut fit = FitResult::new(params, EstimationMethod::Bayes, objective, healthy, cfg.iterations);
    if !healthy {
        fit.warnings.push(format!(
            "acceptance rates {acceptance:?} outside [0.05, 0.7] after adaptation"
        ));
    }
    fit.stderr = Some(sd);
    fit.ci95 = Some(ci);
    fit.bayes = Some(BayesDiagnostics {
        acceptance,
        final_scales: scales,
        posterior_sd: sd,
        mcse,
        kept_draws: kept,
    });
    Ok(fit)
}

fn empirical_quantile(sorted: &[f64], prob: f64) -> f64 {
    let pos = prob * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Standard error of the mean from `⌊√n⌋` non-overlapping batches.
fn batch_means_se(xs: &[f64]) -> f64 {
    let b = (xs.len() as f64).sqrt().floor() as usize;
    if b < 2 {
        return f64::NAN;
    }
    let size = xs.len() / b;
    let means: Vec<f64> = (0..b).map(|i| crate::numeric::mean(&xs[i * size..(i + 1) * size])).collect();
    crate::numeric::sample_std(&means) / (b as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(BayesConfig::default().validate().is_ok());
        let bad = BayesConfig {
            burn_in: 10,
            iterations: 10,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = BayesConfig {
            proposal_scales: [0.1, 0.0, 0.1],
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn chain_is_reproducible() {
        let p0 = NtleParams::new(1.0, 1.5, 0.5).unwrap();
        let s = Sample::new(p0.sample(60, 5).unwrap()).unwrap();
        let cfg = BayesConfig {
            iterations: 1500,
            burn_in: 500,
            seed: 11,
            ..Default::default()
        };
        let a = fit_bayes_from(&s, &cfg, &p0).unwrap();
        let b = fit_bayes_from(&s, &cfg, &p0).unwrap();
        assert_eq!(a, b);
        let c = fit_bayes_from(&s, &BayesConfig { seed: 12, ..cfg }, &p0).unwrap();
        assert_ne!(a.params, c.params);
    }

    #[test]
    fn batch_means_of_constant_is_zero() {
        assert_eq!(batch_means_se(&[2.0; 100]), 0.0);
    }
}
