//! Monte Carlo campaigns: replicated samples, every requested estimator on
//! each sample, and Bias / MSE / RMSE per method, sample size and parameter.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{NtleError, Result};
use crate::estimation::{fit, BayesConfig, EstimationMethod, FitOptions, FitResult, PceForm, Sample};
use crate::rng;
use crate::NtleParams;

fn default_replications() -> usize {
    1000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub true_params: NtleParams,
    pub sample_sizes: Vec<usize>,
    pub methods: Vec<EstimationMethod>,
    #[serde(default = "default_replications")]
    pub replications: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bayes: Option<BayesConfig>,
    #[serde(default)]
    pub pce_form: PceForm,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sample_sizes.is_empty() {
            return Err(NtleError::Config("sample_sizes must not be empty".into()));
        }
        if let Some(n) = self.sample_sizes.iter().find(|&&n| n < Sample::MIN_SIZE) {
            return Err(NtleError::Config(format!(
                "sample_sizes: every size must be at least {}, got {n}",
                Sample::MIN_SIZE
            )));
        }
        if self.methods.is_empty() {
            return Err(NtleError::Config("methods must not be empty".into()));
        }
        if self.replications == 0 {
            return Err(NtleError::Config("replications must be at least 1".into()));
        }
        if let Some(b) = &self.bayes {
            b.validate()?;
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: SimulationConfig = toml::from_str(text).map_err(|e| NtleError::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_toml_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| NtleError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// Sample sizes in ascending order without duplicates.
    fn sizes(&self) -> Vec<usize> {
        self.sample_sizes.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    fn methods(&self) -> Vec<EstimationMethod> {
        self.methods.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }
}

/// What a campaign calls to fit one sample.
pub trait Estimator: Sync {
    /// `seed` is the replication seed; stochastic estimators derive their own
    /// streams from it.
    fn estimate(&self, method: EstimationMethod, sample: &Sample, seed: u64) -> Result<FitResult>;
}

/// The library estimators.
#[derive(Debug, Clone, Default)]
pub struct StandardEstimator {
    pub options: FitOptions,
}

/// Stream tag for the MCMC chain of a replication.
const BAYES_STREAM: u64 = 0xBA7E5;

impl Estimator for StandardEstimator {
    fn estimate(&self, method: EstimationMethod, sample: &Sample, seed: u64) -> Result<FitResult> {
        let mut opts = self.options.clone();
        opts.bayes.seed = rng::child_seed(seed, BAYES_STREAM);
        fit(method, sample, &opts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parameter {
    #[serde(rename = "lambda")]
    Lambda,
    #[serde(rename = "beta")]
    Beta,
    #[serde(rename = "delta")]
    Delta,
}

impl Parameter {
    pub const ALL: [Parameter; 3] = [Parameter::Lambda, Parameter::Beta, Parameter::Delta];

    pub fn as_str(&self) -> &'static str {
        match self {
            Parameter::Lambda => "lambda",
            Parameter::Beta => "beta",
            Parameter::Delta => "delta",
        }
    }

    fn index(&self) -> usize {
        *self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub bias: f64,
    pub mse: f64,
    pub rmse: f64,
    /// Sample standard deviation of the errors over `√R`.
    pub mc_std_error: f64,
}

/// Bias, MSE, RMSE and Monte Carlo standard error for `λ`, `β`, `δ`.
pub fn compute_metrics(estimates: &[NtleParams], truth: &NtleParams) -> Result<[Metrics; 3]> {
    if estimates.is_empty() {
        return Err(NtleError::Empty("no estimates to summarise".into()));
    }
    let t = truth.as_array();
    let r = estimates.len() as f64;
    Ok([0, 1, 2].map(|k| {
        let errs: Vec<f64> = estimates.iter().map(|e| e.as_array()[k] - t[k]).collect();
        let bias = errs.iter().sum::<f64>() / r;
        let mse = errs.iter().map(|e| e * e).sum::<f64>() / r;
        Metrics {
            bias,
            mse,
            rmse: mse.sqrt(),
            mc_std_error: crate::numeric::sample_std(&errs) / r.sqrt(),
        }
    }))
}

/// Results for one `(method, n)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub method: EstimationMethod,
    pub n: usize,
    pub replications: usize,
    /// Replications excluded because the fit errored or did not converge.
    pub failures: usize,
    /// Metrics for `λ`, `β`, `δ`; absent when every replication failed.
    pub metrics: Option<[Metrics; 3]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diagnostic: Option<String>,
    /// Summed wall time of the cell's fits.
    pub elapsed_secs: f64,
}

/// One CSV row: a cell and one parameter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub method: EstimationMethod,
    pub n: usize,
    pub parameter: Parameter,
    pub bias: f64,
    pub mse: f64,
    pub rmse: f64,
    pub mc_std_error: f64,
    pub failures: usize,
}

pub const FAILURE_POLICY: &str = "non-converged or failed fits are excluded from the metrics and counted in failures";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub config: SimulationConfig,
    pub failure_policy: String,
    pub cells: Vec<CellReport>,
}

impl SimulationReport {
    pub fn cell(&self, method: EstimationMethod, n: usize) -> Option<&CellReport> {
        self.cells.iter().find(|c| c.method == method && c.n == n)
    }

    pub fn metric(&self, method: EstimationMethod, n: usize, parameter: Parameter) -> Option<Metrics> {
        self.cell(method, n)?.metrics.map(|m| m[parameter.index()])
    }

    /// Flattened rows; empty cells contribute NaN metrics.
    pub fn rows(&self) -> Vec<ReportRow> {
        let mut out = Vec::new();
        for c in &self.cells {
            for p in Parameter::ALL {
                let m = c.metrics.map(|m| m[p.index()]).unwrap_or(Metrics {
                    bias: f64::NAN,
                    mse: f64::NAN,
                    rmse: f64::NAN,
                    mc_std_error: f64::NAN,
                });
                out.push(ReportRow {
                    method: c.method,
                    n: c.n,
                    parameter: p,
                    bias: m.bias,
                    mse: m.mse,
                    rmse: m.rmse,
                    mc_std_error: m.mc_std_error,
                    failures: c.failures,
                });
            }
        }
        out
    }

    pub const CSV_HEADER: &'static str = "method,n,parameter,bias,mse,rmse,mc_std_error,failures";

    /// CSV with full binary64 precision (shortest round-trip decimals).
    pub fn to_csv(&self) -> String {
        let mut s = String::from(Self::CSV_HEADER);
        s.push('\n');
        for r in self.rows() {
            let _ = writeln!(
                s,
                "{},{},{},{:?},{:?},{:?},{:?},{}",
                r.method,
                r.n,
                r.parameter.as_str(),
                r.bias,
                r.mse,
                r.rmse,
                r.mc_std_error,
                r.failures
            );
        }
        s
    }

    /// Nested JSON. Non-finite numbers are written as `null`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// The report with timing fields zeroed, for reproducibility checks.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.cells {
            c.elapsed_secs = 0.0;
        }
        r
    }
}

/// Run a campaign with the library estimators.
pub fn run_campaign(cfg: &SimulationConfig) -> Result<SimulationReport> {
    let est = StandardEstimator {
        options: FitOptions {
            bayes: cfg.bayes.clone().unwrap_or_default(),
            pce_form: cfg.pce_form,
        },
    };
    run_campaign_with(cfg, &est)
}

struct Outcome {
    fit: Result<FitResult>,
    secs: f64,
}

/// Run a campaign with any estimator. Replication `r` at size `n` draws its
/// sample from seed `base_seed ^ hash(n, r)`, and every method fits that same
/// sample. Replications run in parallel; results are reduced in index order.
pub fn run_campaign_with(cfg: &SimulationConfig, est: &dyn Estimator) -> Result<SimulationReport> {
    cfg.validate()?;
    let methods = cfg.methods();
    let mut cells = Vec::new();
    for n in cfg.sizes() {
        let per_rep: Vec<Vec<Outcome>> = (0..cfg.replications)
            .into_par_iter()
            .map(|r| {
                let seed = rng::replication_seed(cfg.base_seed, n, r);
                let sample = cfg
                    .true_params
                    .sample(n, seed)
                    .and_then(Sample::new);
                methods
                    .iter()
                    .map(|&m| {
                        let t = Instant::now();
                        let fit = match &sample {
                            Ok(s) => est.estimate(m, s, seed),
                            Err(e) => Err(e.clone()),
                        };
                        Outcome {
                            fit,
                            secs: t.elapsed().as_secs_f64(),
                        }
                    })
                    .collect()
            })
            .collect();
        for (k, &method) in methods.iter().enumerate() {
            let mut estimates = Vec::with_capacity(cfg.replications);
            let mut elapsed = 0.0;
            let mut last_error = None;
            for rep in &per_rep {
                let o = &rep[k];
                elapsed += o.secs;
                match &o.fit {
                    Ok(f) if f.converged && f.params.as_array().iter().all(|x| x.is_finite()) => {
                        estimates.push(f.params)
                    }
                    Ok(_) => {}
                    Err(e) => last_error = Some(e.to_string()),
                }
            }
            let failures = cfg.replications - estimates.len();
            let metrics = compute_metrics(&estimates, &cfg.true_params).ok();
            let diagnostic = if metrics.is_none() {
                Some(match last_error {
                    Some(e) => format!("every replication failed; last error: {e}"),
                    None => "every replication failed to converge".to_string(),
                })
            } else {
                None
            };
            cells.push(CellReport {
                method,
                n,
                replications: cfg.replications,
                failures,
                metrics,
                diagnostic,
                elapsed_secs: elapsed,
            });
        }
    }
    Ok(SimulationReport {
        config: cfg.clone(),
        failure_policy: FAILURE_POLICY.to_string(),
        cells,
    })
}
