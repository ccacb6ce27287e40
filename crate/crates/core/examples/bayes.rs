//! Random-walk Metropolis posterior under gamma priors on the scale and
//! shape and a uniform prior on the transmutation parameter.
//!
//! Run with `cargo run --release --example bayes`.

use ntle::estimation::{fit_bayes, fit_mle, BayesConfig, Sample};
use ntle::NtleParams;

fn main() -> ntle::Result<()> {
    let truth = NtleParams::new(1.0, 1.5, 0.5)?;
    let s = Sample::new(truth.sample(200, 3)?)?;

    let cfg = BayesConfig {
        seed: 99,
        ..BayesConfig::default()
    };
    let post = fit_bayes(&s, &cfg)?;
    let d = post.bayes.as_ref().expect("bayes fits carry diagnostics");
    println!("posterior mean {}", post.params);
    println!("posterior sd   {:.4?}", d.posterior_sd);
    println!("mcse           {:.4?}", d.mcse);
    println!("acceptance     {:.3?} over {} kept draws", d.acceptance, d.kept_draws);
    println!("MLE            {}", fit_mle(&s).params);
    Ok(())
}
