//! Multistart maximum likelihood against a single Nelder-Mead run started at
//! the true parameters. At moderate n the likelihood often has a second
//! mode near δ = -1, and the global maximiser lands there for a share of the
//! replications.
//!
//! Run with `cargo run --release --example likelihood_modes [n] [reps]`.

use ntle::estimation::optimizer::{nelder_mead, NelderMeadOptions, ParamSpace};
use ntle::estimation::{fit_mle, log_likelihood, Sample};
use ntle::rng::replication_seed;
use ntle::NtleParams;

fn summary(errors: &[f64]) -> (f64, f64) {
    let r = errors.len() as f64;
    let bias = errors.iter().sum::<f64>() / r;
    let rmse = (errors.iter().map(|e| e * e).sum::<f64>() / r).sqrt();
    (bias, rmse)
}

fn main() -> ntle::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let n = args.next().unwrap_or(500);
    let reps = args.next().unwrap_or(100);
    let truth = NtleParams::new(1.0, 1.5, 0.5)?;
    let space = ParamSpace::FULL;

    let (mut global, mut local) = (Vec::new(), Vec::new());
    let mut far = 0;
    for r in 0..reps {
        let s = Sample::new(truth.sample(n, replication_seed(2024, n, r))?)?;
        let g = fit_mle(&s).params;
        let m = nelder_mead(|z| -log_likelihood(&space.decode(z), &s), &space.encode(&truth), &NelderMeadOptions::default());
        let l = space.decode(&m.x);
        if (g.delta() - l.delta()).abs() > 0.5 {
            far += 1;
        }
        global.push(g.lambda() - truth.lambda());
        local.push(l.lambda() - truth.lambda());
    }
    let (gb, gr) = summary(&global);
    let (lb, lr) = summary(&local);
    println!("n = {n}, {reps} replications");
    println!("multistart MLE:        bias(lambda) {gb:.4}  rmse {gr:.4}");
    println!("started at the truth:  bias(lambda) {lb:.4}  rmse {lr:.4}");
    println!("replications where the two disagree on delta by more than 0.5: {far}");
    Ok(())
}
