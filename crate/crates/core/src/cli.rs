//! Command-line interface: `eval`, `fit`, `simulate`, `compare`, `sample`.
//!
//! Exit codes: 0 on success (a non-converged fit is still a success), 2 for
//! usage, parse and domain errors, 3 for numerical failures.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analytics;
use crate::dataset::{format_dataset, read_dataset};
use crate::error::{NtleError, Result};
use crate::estimation::{fit, BayesConfig, EstimationMethod, FitOptions, FitResult, PceForm};
use crate::gof::{compare_models, emit_plot_data};
use crate::numeric::format_sig;
use crate::simulation::{run_campaign, SimulationConfig};
use crate::{NtleParams, QuadratureSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

const DIGITS: usize = 12;

#[derive(Debug, Parser)]
#[command(name = "ntle", version, about = "NTLE lifetime distribution toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate distribution functions and properties.
    Eval(EvalArgs),
    /// Fit the distribution to a dataset.
    Fit(FitArgs),
    /// Run a Monte Carlo campaign from a TOML config.
    Simulate(SimulateArgs),
    /// Compare exponential, logistic-exponential and NTLE fits.
    Compare(CompareArgs),
    /// Draw a random sample.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum EvalTarget {
    Pdf,
    Cdf,
    Sf,
    Hazard,
    Quantile,
    Mode,
    Entropy,
    Renyi,
    Moment,
    Mrl,
    Rrl,
    Lorenz,
    StressStrength,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub delta: f64,
}

impl ParamArgs {
    fn params(&self) -> Result<NtleParams> {
        NtleParams::new(self.lambda, self.beta, self.delta)
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub what: EvalTarget,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub delta: f64,
    /// Points for pdf, cdf, sf and hazard (comma separated).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub y: Vec<f64>,
    /// Probabilities for quantile and lorenz (comma separated).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub p: Vec<f64>,
    /// Thresholds for mrl, rrl and incomplete moments (comma separated).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub t: Vec<f64>,
    /// Moment order.
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Rényi order.
    #[arg(long, allow_negative_numbers = true)]
    pub order: Option<f64>,
    /// Use quadrature for the Rényi entropy even at integer orders.
    #[arg(long)]
    pub numeric: bool,
    /// Strength variable's δ (stress_strength).
    #[arg(long, allow_negative_numbers = true)]
    pub delta1: Option<f64>,
    /// Stress variable's δ (stress_strength).
    #[arg(long, allow_negative_numbers = true)]
    pub delta2: Option<f64>,
    /// Stress variable's λ when it differs (stress_strength).
    #[arg(long)]
    pub lambda2: Option<f64>,
    /// Stress variable's β when it differs (stress_strength).
    #[arg(long)]
    pub beta2: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PceFormArg {
    Quantile,
    Cdf,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Dataset file: one observation per line or single-column CSV.
    pub dataset: PathBuf,
    #[arg(long, default_value = "mle", value_parser = parse_method)]
    pub method: EstimationMethod,
    /// Print the result as JSON.
    #[arg(long)]
    pub json: bool,
    /// Seed of the Bayes chain.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = PceFormArg::Quantile)]
    pub pce_form: PceFormArg,
    #[command(flatten)]
    pub bayes: BayesArgs,
}

#[derive(Debug, Args)]
pub struct BayesArgs {
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub burn_in: Option<usize>,
    #[arg(long)]
    pub prior_shape_lambda: Option<f64>,
    #[arg(long)]
    pub prior_rate_lambda: Option<f64>,
    #[arg(long)]
    pub prior_shape_beta: Option<f64>,
    #[arg(long)]
    pub prior_rate_beta: Option<f64>,
    /// Disable proposal-scale adaptation during burn-in.
    #[arg(long)]
    pub no_adapt: bool,
}

impl BayesArgs {
    fn config(&self, seed: u64) -> BayesConfig {
        let d = BayesConfig::default();
        BayesConfig {
            prior_shape_lambda: self.prior_shape_lambda.unwrap_or(d.prior_shape_lambda),
            prior_rate_lambda: self.prior_rate_lambda.unwrap_or(d.prior_rate_lambda),
            prior_shape_beta: self.prior_shape_beta.unwrap_or(d.prior_shape_beta),
            prior_rate_beta: self.prior_rate_beta.unwrap_or(d.prior_rate_beta),
            iterations: self.iterations.unwrap_or(d.iterations),
            burn_in: self.burn_in.unwrap_or(d.burn_in),
            adapt: !self.no_adapt,
            seed,
            ..d
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Campaign config (TOML).
    pub config: PathBuf,
    /// Directory for simulation.csv and simulation.json.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Override the config's base_seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the config's replication count.
    #[arg(long)]
    pub replications: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub dataset: PathBuf,
    /// Estimators for the NTLE rows.
    #[arg(long, value_delimiter = ',', default_value = "mle,mgfe", value_parser = parse_method)]
    pub methods: Vec<EstimationMethod>,
    /// Directory for gof.json, gof_table.txt, plot_data.csv and histogram.csv.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = 200)]
    pub grid: usize,
    /// Seed of the Bayes chain, if BAYES is requested.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_method(s: &str) -> std::result::Result<EstimationMethod, String> {
    s.parse().map_err(|e: NtleError| e.to_string())
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &NtleError) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_USAGE
    }
}

fn io(e: std::io::Error) -> NtleError {
    NtleError::Io(e.to_string())
}

pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Eval(a) => cmd_eval(a, out),
        Command::Fit(a) => cmd_fit(a, out),
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Sample(a) => cmd_sample(a, out),
    }
}

fn need<'a>(values: &'a [f64], flag: &str, what: EvalTarget) -> Result<&'a [f64]> {
    if values.is_empty() {
        return Err(NtleError::domain(format!(
            "{} requires --{flag}",
            what.to_possible_value().expect("named").get_name()
        )));
    }
    Ok(values)
}

fn print_pairs(out: &mut dyn Write, xs: &[f64], f: impl Fn(f64) -> Result<f64>) -> Result<()> {
    for &x in xs {
        let v = f(x)?;
        writeln!(out, "{}\t{}", format_sig(x, DIGITS), format_sig(v, DIGITS)).map_err(io)?;
    }
    Ok(())
}

fn print_scalar(out: &mut dyn Write, v: f64) -> Result<()> {
    writeln!(out, "{}", format_sig(v, DIGITS)).map_err(io)
}

pub fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> Result<()> {
    let q = QuadratureSpec::default();
    let what = a.what;
    if what == EvalTarget::StressStrength {
        let d1 = a.delta1.unwrap_or(a.delta);
        let d2 = a.delta2.unwrap_or(a.delta);
        let strength = NtleParams::new(a.lambda, a.beta, d1)?;
        let stress = NtleParams::new(a.lambda2.unwrap_or(a.lambda), a.beta2.unwrap_or(a.beta), d2)?;
        return print_scalar(out, analytics::stress_strength(&strength, &stress, &q)?);
    }
    let p = NtleParams::new(a.lambda, a.beta, a.delta)?;
    match what {
        EvalTarget::Pdf => print_pairs(out, need(&a.y, "y", what)?, |y| p.pdf(y)),
        EvalTarget::Cdf => print_pairs(out, need(&a.y, "y", what)?, |y| p.cdf(y)),
        EvalTarget::Sf => print_pairs(out, need(&a.y, "y", what)?, |y| p.survival(y)),
        EvalTarget::Hazard => print_pairs(out, need(&a.y, "y", what)?, |y| p.hazard(y)),
        EvalTarget::Quantile => print_pairs(out, need(&a.p, "p", what)?, |pr| p.quantile(pr)),
        EvalTarget::Mode => {
            let m = p.mode()?;
            let kind = serde_json::to_value(m.kind).expect("serialisable");
            writeln!(out, "{}\t{}", format_sig(m.location, DIGITS), kind.as_str().unwrap_or("")).map_err(io)
        }
        EvalTarget::Entropy => print_scalar(out, analytics::shannon_entropy(&p, &q)?.value),
        EvalTarget::Renyi => {
            let rho = a
                .order
                .ok_or_else(|| NtleError::domain("renyi requires --order"))?;
            let integer = rho.fract() == 0.0 && rho >= 2.0 && rho <= u32::MAX as f64;
            let v = if integer && !a.numeric {
                analytics::renyi_entropy_integer(&p, rho as u32)?
            } else {
                analytics::renyi_entropy_numeric(&p, rho, &q)?
            };
            print_scalar(out, v)
        }
        EvalTarget::Moment => {
            if a.t.is_empty() {
                print_scalar(out, analytics::raw_moment(&p, a.k, &q)?)
            } else {
                print_pairs(out, &a.t, |t| analytics::incomplete_moment(&p, a.k, t, &q))
            }
        }
        EvalTarget::Mrl => print_pairs(out, need(&a.t, "t", what)?, |t| analytics::mean_residual_life(&p, t, &q)),
        EvalTarget::Rrl => print_pairs(out, need(&a.t, "t", what)?, |t| {
            analytics::reversed_residual_life(&p, t, &q)
        }),
        EvalTarget::Lorenz => {
            for &pr in need(&a.p, "p", what)? {
                let l = analytics::lorenz_curve(&p, pr, &q)?;
                let b = analytics::bonferroni_curve(&p, pr, &q)?;
                writeln!(
                    out,
                    "{}\t{}\t{}",
                    format_sig(pr, DIGITS),
                    format_sig(l.value, DIGITS),
                    format_sig(b.value, DIGITS)
                )
                .map_err(io)?;
            }
            Ok(())
        }
        EvalTarget::StressStrength => unreachable!("handled above"),
    }
}

fn fit_text(f: &FitResult) -> String {
    let mut s = String::new();
    let names = ["lambda", "beta", "delta"];
    let th = f.params.as_array();
    s.push_str(&format!("method     {}\n", f.method));
    for i in 0..3 {
        s.push_str(&format!("{:<10} {}", names[i], format_sig(th[i], DIGITS)));
        if let Some(se) = f.stderr {
            s.push_str(&format!("  se {}", format_sig(se[i], DIGITS)));
        }
        if let Some(ci) = f.ci95 {
            s.push_str(&format!(
                "  95% [{}, {}]",
                format_sig(ci[i][0], DIGITS),
                format_sig(ci[i][1], DIGITS)
            ));
        }
        s.push('\n');
    }
    s.push_str(&format!("objective  {}\n", format_sig(f.objective, DIGITS)));
    s.push_str(&format!("converged  {}\n", f.converged));
    s.push_str(&format!("iterations {}\n", f.iterations));
    if let Some(b) = &f.bayes {
        s.push_str(&format!(
            "acceptance {}, {}, {}\n",
            format_sig(b.acceptance[0], 4),
            format_sig(b.acceptance[1], 4),
            format_sig(b.acceptance[2], 4)
        ));
    }
    for w in &f.warnings {
        s.push_str(&format!("warning    {w}\n"));
    }
    s
}

pub fn cmd_fit(a: &FitArgs, out: &mut dyn Write) -> Result<()> {
    let sample = read_dataset(&a.dataset)?;
    let opts = FitOptions {
        bayes: a.bayes.config(a.seed),
        pce_form: match a.pce_form {
            PceFormArg::Quantile => PceForm::Quantile,
            PceFormArg::Cdf => PceForm::Cdf,
        },
    };
    let f = fit(a.method, &sample, &opts)?;
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&f).expect("serialisable")).map_err(io)
    } else {
        write!(out, "{}", fit_text(&f)).map_err(io)
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| NtleError::Io(format!("{}: {e}", path.display())))
}

pub fn cmd_simulate(a: &SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let mut cfg = SimulationConfig::from_toml_file(&a.config)?;
    if let Some(seed) = a.seed {
        cfg.base_seed = seed;
    }
    if let Some(r) = a.replications {
        cfg.replications = r;
    }
    writeln!(out, "base_seed {}", cfg.base_seed).map_err(io)?;
    let report = run_campaign(&cfg)?;
    std::fs::create_dir_all(&a.out_dir).map_err(io)?;
    let csv = a.out_dir.join("simulation.csv");
    let json = a.out_dir.join("simulation.json");
    write_file(&csv, &report.to_csv())?;
    write_file(&json, &report.to_json())?;
    writeln!(out, "{:<6} {:>6} {:<7} {:>14} {:>14} {:>14} {:>8}", "method", "n", "param", "bias", "mse", "rmse", "failures")
        .map_err(io)?;
    for r in report.rows() {
        writeln!(
            out,
            "{:<6} {:>6} {:<7} {:>14} {:>14} {:>14} {:>8}",
            r.method.as_str(),
            r.n,
            r.parameter.as_str(),
            format_sig(r.bias, 6),
            format_sig(r.mse, 6),
            format_sig(r.rmse, 6),
            r.failures
        )
        .map_err(io)?;
    }
    for c in report.cells.iter().filter(|c| c.diagnostic.is_some()) {
        writeln!(out, "empty cell {} n={}: {}", c.method, c.n, c.diagnostic.as_deref().unwrap_or("")).map_err(io)?;
    }
    writeln!(out, "wrote {} and {}", csv.display(), json.display()).map_err(io)
}

pub fn cmd_compare(a: &CompareArgs, out: &mut dyn Write) -> Result<()> {
    let sample = read_dataset(&a.dataset)?;
    let opts = FitOptions {
        bayes: BayesConfig {
            seed: a.seed,
            ..BayesConfig::default()
        },
        ..FitOptions::default()
    };
    let report = compare_models(&sample, &a.methods, &opts);
    let plot = emit_plot_data(&report, &sample, a.grid)?;
    std::fs::create_dir_all(&a.out_dir).map_err(io)?;
    let table = report.to_text_table();
    write_file(&a.out_dir.join("gof.json"), &report.to_json())?;
    write_file(&a.out_dir.join("gof_table.txt"), &table)?;
    write_file(&a.out_dir.join("plot_data.csv"), &plot.to_csv())?;
    write_file(&a.out_dir.join("histogram.csv"), &plot.histogram_csv())?;
    writeln!(out, "m = {}", report.m).map_err(io)?;
    write!(out, "{table}").map_err(io)?;
    writeln!(
        out,
        "wrote gof.json, gof_table.txt, plot_data.csv and histogram.csv to {}",
        a.out_dir.display()
    )
    .map_err(io)
}

pub fn cmd_sample(a: &SampleArgs, out: &mut dyn Write) -> Result<()> {
    let p = a.params.params()?;
    let values = p.sample(a.n, a.seed)?;
    let text = format_dataset(&values);
    match &a.out {
        Some(path) => write_file(path, &text),
        None => write!(out, "{text}").map_err(io),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("ntle").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_examples() {
        let (code, out, _) = run_capture(&["eval", "cdf", "--lambda", "1", "--beta", "1", "--delta", "0", "--y", "0.693147"]);
        assert_eq!(code, 0);
        let v: f64 = out.split_whitespace().last().unwrap().parse().unwrap();
        assert!((v - 0.5).abs() < 1e-6);
        let (_, out, _) = run_capture(&[
            "eval", "stress_strength", "--delta1", "-0.5", "--delta2", "0.5", "--lambda", "1", "--beta", "1.5",
        ]);
        assert_eq!(out.trim(), "0.666666666667");
        let (_, out, _) = run_capture(&["eval", "entropy", "--lambda", "1", "--beta", "1", "--delta", "0"]);
        let v: f64 = out.trim().parse().unwrap();
        assert!((v - 1.0).abs() < 1e-9);
    }

    #[test]
    fn eval_errors() {
        let (code, _, err) = run_capture(&["eval", "cdf", "--lambda", "1", "--beta", "1", "--delta", "1.5", "--y", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("delta"), "{err}");
        let (code, _, _) = run_capture(&["eval", "bogus", "--lambda", "1", "--beta", "1"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = run_capture(&["eval", "renyi", "--lambda", "1", "--beta", "0.4", "--order", "2.5"]);
        assert_eq!(code, EXIT_NUMERICAL);
    }
}
