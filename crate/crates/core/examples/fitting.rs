//! Every point estimator on one simulated sample, with Wald intervals for
//! maximum likelihood.
//!
//! Run with `cargo run --release --example fitting`.

use ntle::estimation::{fit, observed_information, EstimationMethod, FitOptions, Sample};
use ntle::NtleParams;

fn main() -> ntle::Result<()> {
    let truth = NtleParams::new(1.0, 1.5, 0.5)?;
    let s = Sample::new(truth.sample(300, 11)?)?;
    println!("truth {truth}, n = {}", s.len());

    let opts = FitOptions::default();
    for method in EstimationMethod::ALL {
        if method == EstimationMethod::Bayes {
            continue; // see the bayes example
        }
        let r = fit(method, &s, &opts)?;
        println!(
            "{:<5} {}  objective {:.6e}{}",
            method.to_string(),
            r.params,
            r.objective,
            if r.converged { "" } else { "  (not converged)" }
        );
    }

    let mle = fit(EstimationMethod::Mle, &s, &opts)?;
    if let (Some(se), Some(ci)) = (mle.stderr, mle.ci95) {
        for (i, name) in ["lambda", "beta", "delta"].iter().enumerate() {
            println!("{name:<6} {:.4}  se {:.4}  95% [{:.4}, {:.4}]", mle.params.as_array()[i], se[i], ci[i][0], ci[i][1]);
        }
    }
    let info = observed_information(&mle.params, &s);
    println!("observed information diagonal: {:.2?}", [info.matrix[0][0], info.matrix[1][1], info.matrix[2][2]]);
    Ok(())
}
