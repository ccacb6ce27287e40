//! Pointwise functions of the distribution, the sampler and the mode.
//!
//! Run with `cargo run --example distribution`.

use ntle::{ModeKind, NtleParams};

fn main() -> ntle::Result<()> {
    let q = NtleParams::new(1.0, 1.5, 0.5)?;
    println!("{q}");
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "y", "pdf", "cdf", "survival", "hazard");
    for y in [0.1, 0.5, 1.0, 2.0, 4.0] {
        println!(
            "{y:>6.2} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            q.pdf(y)?,
            q.cdf(y)?,
            q.survival(y)?,
            q.hazard(y)?
        );
    }

    // quantiles stay accurate far into both tails
    for p in [1e-9, 0.25, 0.5, 0.75, 1.0 - 1e-9] {
        let y = q.quantile(p)?;
        println!("Q({p:e}) = {y:.6e}, G(Q) - p = {:.1e}", q.cdf(y)? - p);
    }

    for shape in [0.5, 1.0, 2.0] {
        let r = NtleParams::new(1.0, shape, -0.5)?;
        let m = r.mode()?;
        let kind = match m.kind {
            ModeKind::UnboundedAtZero => "density unbounded at zero",
            ModeKind::BoundaryAtZero => "mode at zero",
            ModeKind::Interior => "interior mode",
        };
        println!("beta = {shape}: {kind}, y = {:.6}", m.location);
    }

    let xs = q.sample(100_000, 7)?;
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    println!("sample mean of 1e5 draws (seed 7): {mean:.4}");
    Ok(())
}
