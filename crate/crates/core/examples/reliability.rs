//! Stress-strength reliability and stochastic ordering between members of
//! the family sharing a scale and shape.
//!
//! Run with `cargo run --example reliability`.

use ntle::analytics::{stochastically_leq, stress_strength, stress_strength_integral};
use ntle::{NtleParams, QuadratureSpec};

fn main() -> ntle::Result<()> {
    let spec = QuadratureSpec::default();
    for (d1, d2) in [(-0.5, 0.5), (0.0, 0.0), (0.9, -0.9), (-0.2, 0.7)] {
        let strength = NtleParams::new(1.0, 1.5, d1)?;
        let stress = NtleParams::new(1.0, 1.5, d2)?;
        let closed = stress_strength(&strength, &stress, &spec)?;
        let numeric = stress_strength_integral(&strength, &stress, &spec)?;
        println!("P(stress < strength), delta = ({d1}, {d2}): {closed:.12} (integral {numeric:.12})");
    }

    let a = NtleParams::new(1.0, 2.0, 0.6)?;
    let b = NtleParams::new(1.0, 2.0, -0.3)?;
    let r = stochastically_leq(&a, &b)?;
    println!("{a} <=st {b}: {} ({:?})", r.holds, r.basis);
    let r = stochastically_leq(&b, &a)?;
    println!("{b} <=st {a}: {} ({:?})", r.holds, r.basis);
    Ok(())
}
