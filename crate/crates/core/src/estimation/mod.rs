//! Parameter estimation: ten estimators sharing one multi-start simplex
//! search, observed-information intervals for maximum likelihood, and a
//! Metropolis–Hastings posterior for the Bayes estimator.

mod bayes;
pub mod criteria;
mod mle;
mod mme;
pub mod optimizer;
mod sample;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bayes::{fit_bayes, fit_bayes_from, BayesConfig, BayesDiagnostics};
pub use mle::{fit_mle, fit_mle_constrained, log_likelihood, observed_information, ObservedInformation, Z_975};
pub use mme::{fit_mme, fit_mme_moments, moment_residual};
pub use sample::Sample;

use crate::error::{NtleError, Result};
use crate::NtleParams;
use optimizer::{median_matched_starts, multistart, ParamSpace, SearchOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EstimationMethod {
    Mle,
    Mme,
    Lse,
    Wlse,
    Mps,
    Bayes,
    Ade,
    Cvme,
    Pce,
    Mgfe,
}

impl EstimationMethod {
    pub const ALL: [EstimationMethod; 10] = [
        EstimationMethod::Mle,
        EstimationMethod::Mme,
        EstimationMethod::Lse,
        EstimationMethod::Wlse,
        EstimationMethod::Mps,
        EstimationMethod::Bayes,
        EstimationMethod::Ade,
        EstimationMethod::Cvme,
        EstimationMethod::Pce,
        EstimationMethod::Mgfe,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            EstimationMethod::Mle => "MLE",
            EstimationMethod::Mme => "MME",
            EstimationMethod::Lse => "LSE",
            EstimationMethod::Wlse => "WLSE",
            EstimationMethod::Mps => "MPS",
            EstimationMethod::Bayes => "BAYES",
            EstimationMethod::Ade => "ADE",
            EstimationMethod::Cvme => "CVME",
            EstimationMethod::Pce => "PCE",
            EstimationMethod::Mgfe => "MGFE",
        }
    }
}

impl fmt::Display for EstimationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EstimationMethod {
    type Err = NtleError;
    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == upper)
            .ok_or_else(|| {
                NtleError::domain(format!(
                    "unknown estimation method '{s}'; expected one of MLE, MME, LSE, WLSE, MPS, BAYES, ADE, CVME, PCE, MGFE"
                ))
            })
    }
}

/// Outcome of one fit. Non-converged fits still carry the best point found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub params: NtleParams,
    pub method: EstimationMethod,
    /// The method's own criterion at `params`: maximised log-likelihood for
    /// MLE, maximised log product of spacings for MPS, the minimised
    /// statistic for the distance methods, the residual norm for MME and the
    /// log-likelihood at the posterior mean for BAYES.
    pub objective: f64,
    pub converged: bool,
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stderr: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ci95: Option<[[f64; 2]; 3]>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bayes: Option<BayesDiagnostics>,
}

impl FitResult {
    pub(crate) fn new(
        params: NtleParams,
        method: EstimationMethod,
        objective: f64,
        converged: bool,
        iterations: usize,
    ) -> Self {
        Self {
            params,
            method,
            objective,
            converged,
            iterations,
            stderr: None,
            ci95: None,
            warnings: Vec::new(),
            bayes: None,
        }
    }
}

/// Criterion minimised by the percentile estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PceForm {
    /// `Σ [y₍ᵢ₎ - Q(pᵢ)]²`
    #[default]
    Quantile,
    /// `Σ [G(y₍ᵢ₎) - pᵢ]²`, identical to least squares.
    Cdf,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    pub bayes: BayesConfig,
    pub pce_form: PceForm,
}

fn minimum_distance<F: Fn(&NtleParams, &[f64]) -> f64>(
    s: &Sample,
    method: EstimationMethod,
    criterion: F,
    maximise: bool,
) -> FitResult {
    let space = ParamSpace::FULL;
    let starts = median_matched_starts(s.median(), &space);
    let ys = s.values();
    let sign = if maximise { -1.0 } else { 1.0 };
    let r = multistart(|p| sign * criterion(p, ys), &starts, &space, &SearchOptions::default());
    let mut fit = FitResult::new(r.params, method, sign * r.value, r.converged, r.evals);
    if !r.converged {
        fit.warnings.push("simplex search did not converge".into());
    }
    fit
}

pub fn fit_lse(s: &Sample) -> FitResult {
    minimum_distance(s, EstimationMethod::Lse, criteria::lse, false)
}

pub fn fit_wlse(s: &Sample) -> FitResult {
    minimum_distance(s, EstimationMethod::Wlse, criteria::wlse, false)
}

/// Maximum product of spacings. Errors when every observation is identical.
pub fn fit_mps(s: &Sample) -> Result<FitResult> {
    if s.values()[0] == s.max() {
        return Err(NtleError::domain("all spacings are degenerate: every observation is identical"));
    }
    Ok(minimum_distance(s, EstimationMethod::Mps, criteria::log_spacings, true))
}

pub fn fit_ade(s: &Sample) -> FitResult {
    minimum_distance(s, EstimationMethod::Ade, criteria::anderson_darling, false)
}

pub fn fit_cvme(s: &Sample) -> FitResult {
    minimum_distance(s, EstimationMethod::Cvme, criteria::cramer_von_mises, false)
}

pub fn fit_pce(s: &Sample) -> FitResult {
    fit_pce_with(s, PceForm::Quantile)
}

pub fn fit_pce_with(s: &Sample, form: PceForm) -> FitResult {
    match form {
        PceForm::Quantile => minimum_distance(s, EstimationMethod::Pce, criteria::percentile_quantile, false),
        PceForm::Cdf => minimum_distance(s, EstimationMethod::Pce, criteria::lse, false),
    }
}

pub fn fit_mgfe(s: &Sample) -> FitResult {
    minimum_distance(s, EstimationMethod::Mgfe, criteria::max_gof, false)
}

/// Dispatch to the estimator for `method`.
pub fn fit(method: EstimationMethod, s: &Sample, opts: &FitOptions) -> Result<FitResult> {
    Ok(match method {
        EstimationMethod::Mle => fit_mle(s),
        EstimationMethod::Mme => fit_mme(s),
        EstimationMethod::Lse => fit_lse(s),
        EstimationMethod::Wlse => fit_wlse(s),
        EstimationMethod::Mps => fit_mps(s)?,
        EstimationMethod::Bayes => fit_bayes(s, &opts.bayes)?,
        EstimationMethod::Ade => fit_ade(s),
        EstimationMethod::Cvme => fit_cvme(s),
        EstimationMethod::Pce => fit_pce_with(s, opts.pce_form),
        EstimationMethod::Mgfe => fit_mgfe(s),
    })
}
