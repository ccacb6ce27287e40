//! Model comparison: exponential, logistic-exponential and NTLE fits with
//! log-likelihood, information criteria and Kolmogorov–Smirnov statistics,
//! plus tabular plot data.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{NtleError, Result};
use crate::estimation::optimizer::ParamSpace;
use crate::estimation::{fit, fit_mle_constrained, log_likelihood, EstimationMethod, FitOptions, Sample};
use crate::numeric::format_sig;
use crate::NtleParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Exponential,
    LogisticExponential,
    Ntle,
}

impl ModelKind {
    /// Number of free parameters.
    pub fn n_params(&self) -> usize {
        match self {
            ModelKind::Exponential => 1,
            ModelKind::LogisticExponential => 2,
            ModelKind::Ntle => 3,
        }
    }
}

/// A fitted candidate. Submodels are NTLE triples with pinned coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateModel {
    pub kind: ModelKind,
    pub params: NtleParams,
    pub method: EstimationMethod,
}

impl CandidateModel {
    pub fn label(&self) -> String {
        match self.kind {
            ModelKind::Exponential => "exponential".into(),
            ModelKind::LogisticExponential => "logistic-exponential".into(),
            ModelKind::Ntle => format!("NTLE ({})", self.method),
        }
    }

    /// Identifier safe for CSV column names.
    pub fn key(&self) -> String {
        match self.kind {
            ModelKind::Exponential => "exponential".into(),
            ModelKind::LogisticExponential => "logistic_exponential".into(),
            ModelKind::Ntle => format!("ntle_{}", self.method.as_str().to_lowercase()),
        }
    }

    pub fn n_params(&self) -> usize {
        self.kind.n_params()
    }
}

/// `D = max_i max(i/m - G(y₍ᵢ₎), G(y₍ᵢ₎) - (i-1)/m)` from CDF values at the
/// order statistics.
pub fn ks_statistic_from_cdf(cdf_at_order_stats: &[f64]) -> f64 {
    let m = cdf_at_order_stats.len() as f64;
    cdf_at_order_stats
        .iter()
        .enumerate()
        .map(|(i, &g)| {
            let i = i as f64;
            ((i + 1.0) / m - g).abs().max((g - i / m).abs())
        })
        .fold(0.0, f64::max)
}

pub fn ks_statistic(p: &NtleParams, s: &Sample) -> f64 {
    let g: Vec<f64> = s.values().iter().map(|&y| p.cdf(y).unwrap_or(f64::NAN)).collect();
    ks_statistic_from_cdf(&g)
}

/// Asymptotic Kolmogorov tail `Q(√m·d)`.
///
/// For `x = √m·d < 1` the Jacobi theta form
/// `1 - √(2π)/x Σ_{k odd} exp(-k²π²/(8x²))` converges fast; otherwise the
/// alternating series `2 Σ (-1)^{k-1} exp(-2k²x²)` is summed until terms fall
/// below 1e-12.
pub fn ks_pvalue(d: f64, m: usize) -> f64 {
    let x = (m as f64).sqrt() * d.clamp(0.0, 1.0);
    if x <= 0.0 {
        return 1.0;
    }
    let q = if x < 1.0 {
        let mut sum = 0.0;
        let mut k = 1.0f64;
        loop {
            let term = (-(k * k) * PI * PI / (8.0 * x * x)).exp();
            sum += term;
            if term < 1e-16 || k > 200.0 {
                break;
            }
            k += 2.0;
        }
        1.0 - (2.0 * PI).sqrt() / x * sum
    } else {
        let mut sum = 0.0;
        let mut k = 1.0f64;
        loop {
            let term = (-2.0 * k * k * x * x).exp();
            if term < 1e-12 {
                break;
            }
            sum += if (k as u64) % 2 == 1 { term } else { -term };
            k += 1.0;
        }
        2.0 * sum
    };
    q.clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InformationCriteria {
    pub aic: f64,
    pub bic: f64,
    pub caic: f64,
    pub hqic: f64,
}

/// AIC, BIC, CAIC and HQIC for `p` parameters and sample size `m`.
pub fn information_criteria(loglik: f64, p: usize, m: f64) -> InformationCriteria {
    let p = p as f64;
    let dev = -2.0 * loglik;
    let bic = dev + p * m.ln();
    InformationCriteria {
        aic: dev + 2.0 * p,
        bic,
        caic: bic + p,
        hqic: dev + 2.0 * p * m.ln().ln(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofRow {
    pub model: String,
    pub candidate: CandidateModel,
    pub loglik: f64,
    pub aic: f64,
    pub bic: f64,
    pub caic: f64,
    pub hqic: f64,
    pub ks_stat: f64,
    pub ks_pvalue: f64,
    pub converged: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailedModel {
    pub model: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub m: usize,
    /// Rows sorted by AIC, best first.
    pub rows: Vec<GofRow>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub failed: Vec<FailedModel>,
}

impl GofReport {
    pub fn row(&self, model: &str) -> Option<&GofRow> {
        self.rows.iter().find(|r| r.model == model)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// Aligned text table with 12 significant digits.
    pub fn to_text_table(&self) -> String {
        let header = [
            "model", "lambda", "beta", "delta", "loglik", "AIC", "BIC", "CAIC", "HQIC", "K-S", "p-value",
        ];
        let mut cells: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        for r in &self.rows {
            let p = r.candidate.params;
            let mut line = vec![r.model.clone(), format_sig(p.lambda(), 12)];
            match r.candidate.kind {
                ModelKind::Exponential => line.extend(["-".to_string(), "-".to_string()]),
                ModelKind::LogisticExponential => line.extend([format_sig(p.beta(), 12), "-".to_string()]),
                ModelKind::Ntle => line.extend([format_sig(p.beta(), 12), format_sig(p.delta(), 12)]),
            }
            for v in [r.loglik, r.aic, r.bic, r.caic, r.hqic, r.ks_stat, r.ks_pvalue] {
                line.push(format_sig(v, 12));
            }
            cells.push(line);
        }
        let widths: Vec<usize> = (0..header.len())
            .map(|j| cells.iter().map(|row| row[j].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(j, (c, w))| if j == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        for f in &self.failed {
            let _ = writeln!(out, "{}: failed ({})", f.model, f.error);
        }
        out
    }
}

fn row_for(candidate: CandidateModel, s: &Sample, converged: bool, mut flags: Vec<String>) -> GofRow {
    let loglik = log_likelihood(&candidate.params, s);
    let ic = information_criteria(loglik, candidate.n_params(), s.len() as f64);
    let ks_stat = ks_statistic(&candidate.params, s);
    if !converged {
        flags.push("fit did not converge".into());
    }
    GofRow {
        model: candidate.label(),
        loglik,
        aic: ic.aic,
        bic: ic.bic,
        caic: ic.caic,
        hqic: ic.hqic,
        ks_stat,
        ks_pvalue: ks_pvalue(ks_stat, s.len()),
        converged,
        flags,
        candidate,
    }
}

/// Fit the exponential (`λ = 1/ȳ`), the logistic-exponential (maximum
/// likelihood with `δ = 0`) and NTLE by each of `ntle_methods`, and rank by
/// AIC. Each nested maximum-likelihood search is seeded with the optimum of
/// the smaller model, so the log-likelihoods are ordered. NTLE rows fitted
/// by other methods report likelihood quantities at their own estimates.
pub fn compare_models(s: &Sample, ntle_methods: &[EstimationMethod], opts: &FitOptions) -> GofReport {
    let mut rows = Vec::new();
    let mut failed = Vec::new();

    let exp = NtleParams::exponential(1.0 / s.mean()).expect("positive sample mean");
    rows.push(row_for(
        CandidateModel {
            kind: ModelKind::Exponential,
            params: exp,
            method: EstimationMethod::Mle,
        },
        s,
        true,
        Vec::new(),
    ));

    let le = fit_mle_constrained(s, &ParamSpace::LOGISTIC_EXPONENTIAL, &[exp]);
    rows.push(row_for(
        CandidateModel {
            kind: ModelKind::LogisticExponential,
            params: le.params,
            method: EstimationMethod::Mle,
        },
        s,
        le.converged,
        Vec::new(),
    ));

    let mut seen = Vec::new();
    for &method in ntle_methods {
        if seen.contains(&method) {
            continue;
        }
        seen.push(method);
        let result = if method == EstimationMethod::Mle {
            Ok(fit_mle_constrained(s, &ParamSpace::FULL, &[le.params, exp]))
        } else {
            fit(method, s, opts)
        };
        let candidate = |params| CandidateModel {
            kind: ModelKind::Ntle,
            params,
            method,
        };
        match result {
            Ok(f) => rows.push(row_for(candidate(f.params), s, f.converged, f.warnings)),
            Err(e) => failed.push(FailedModel {
                model: candidate(exp).label(),
                error: e.to_string(),
            }),
        }
    }
    rows.sort_by(|a, b| a.aic.total_cmp(&b.aic));
    GofReport {
        m: s.len(),
        rows,
        failed,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
    /// `count / (m · width)`, comparable with a density.
    pub density: f64,
}

/// Histogram bins by the Freedman–Diaconis rule (width `2·IQR·m^{-1/3}`),
/// falling back to `⌈√m⌉` equal bins when the IQR is zero.
pub fn histogram(s: &Sample) -> Vec<HistogramBin> {
    let v = s.values();
    let m = v.len();
    let (lo, hi) = (v[0], s.max());
    let quart = |p: f64| {
        let pos = p * (m - 1) as f64;
        let (a, b) = (pos.floor() as usize, pos.ceil() as usize);
        v[a] + (pos - a as f64) * (v[b] - v[a])
    };
    let iqr = quart(0.75) - quart(0.25);
    let bins = if iqr > 0.0 && hi > lo {
        let width = 2.0 * iqr / (m as f64).cbrt();
        (((hi - lo) / width).ceil() as usize).max(1)
    } else {
        ((m as f64).sqrt().ceil() as usize).max(1)
    };
    let width = if hi > lo { (hi - lo) / bins as f64 } else { 1.0 };
    let mut counts = vec![0usize; bins];
    for &y in v {
        let k = (((y - lo) / width) as usize).min(bins - 1);
        counts[k] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(k, count)| HistogramBin {
            lower: lo + k as f64 * width,
            upper: lo + (k + 1) as f64 * width,
            count,
            density: count as f64 / (m as f64 * width),
        })
        .collect()
}

/// Fitted curves on a grid, ready for plotting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotData {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub histogram: Vec<HistogramBin>,
}

impl PlotData {
    /// Header line: `y,empirical_cdf`, then `cdf_<model>` for every model,
    /// then `pdf_<model>` in the same order.
    pub fn header(&self) -> String {
        self.columns.join(",")
    }

    /// Full-precision CSV; an unbounded density is written as `inf`.
    pub fn to_csv(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|x| if x.is_infinite() { "inf".to_string() } else { format!("{x:?}") })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("lower,upper,count,density\n");
        for b in &self.histogram {
            let _ = writeln!(out, "{:?},{:?},{},{:?}", b.lower, b.upper, b.count, b.density);
        }
        out
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }
}

/// Evaluate every model of `report` on `grid_size` equally spaced points
/// of `[0, 1.05·max(s)]`, with `max(s)` itself added to the grid.
pub fn emit_plot_data(report: &GofReport, s: &Sample, grid_size: usize) -> Result<PlotData> {
    if grid_size < 2 {
        return Err(NtleError::domain("plot grid needs at least 2 points"));
    }
    let mut models: Vec<&CandidateModel> = report.rows.iter().map(|r| &r.candidate).collect();
    models.sort_by_key(|c| (c.kind as u8, c.method));
    let top = 1.05 * s.max();
    let mut grid: Vec<f64> = (0..grid_size).map(|i| top * i as f64 / (grid_size - 1) as f64).collect();
    grid.push(s.max());
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let mut columns = vec!["y".to_string(), "empirical_cdf".to_string()];
    columns.extend(models.iter().map(|c| format!("cdf_{}", c.key())));
    columns.extend(models.iter().map(|c| format!("pdf_{}", c.key())));

    let v = s.values();
    let m = v.len() as f64;
    let mut rows = Vec::with_capacity(grid.len());
    for &y in &grid {
        let ecdf = v.partition_point(|&x| x <= y) as f64 / m;
        let mut row = vec![y, ecdf];
        for c in &models {
            row.push(c.params.cdf(y)?);
        }
        for c in &models {
            row.push(c.params.pdf(y)?);
        }
        rows.push(row);
    }
    Ok(PlotData {
        columns,
        rows,
        histogram: histogram(s),
    })
}
