//! Entropies, moments, residual life and concentration curves.
//!
//! Run with `cargo run --example analytics`.

use ntle::analytics::*;
use ntle::{NtleParams, QuadratureSpec};

fn main() -> ntle::Result<()> {
    let q = NtleParams::new(1.0, 1.5, 0.5)?;
    let spec = QuadratureSpec::default();

    let h = shannon_entropy(&q, &spec)?;
    println!("Shannon entropy {:.10} (J = {:.6}, K = {:.6})", h.value, h.j_term, h.k_term);
    for m in 2..=4 {
        println!("Renyi order {m}: {:.10}", renyi_entropy_integer(&q, m)?);
    }
    println!("Renyi order 2.5: {:.10}", renyi_entropy_numeric(&q, 2.5, &spec)?);
    // integer orders need m(β - 1) > -1
    if let Err(e) = renyi_entropy_integer(&NtleParams::new(1.0, 0.4, 0.0)?, 2) {
        println!("beta = 0.4, order 2: {e}");
    }

    for k in 1..=4 {
        println!("E[Y^{k}] = {:.8}", raw_moment(&q, k, &spec)?);
    }
    for t in [0.5, 1.0, 2.0] {
        println!(
            "t = {t}: mean residual life {:.6}, reversed residual life {:.6}, E[Y; Y <= t] = {:.6}",
            mean_residual_life(&q, t, &spec)?,
            reversed_residual_life(&q, t, &spec)?,
            incomplete_moment(&q, 1, t, &spec)?
        );
    }
    for p in [0.1, 0.5, 0.9] {
        let l = lorenz_curve(&q, p, &spec)?;
        let b = bonferroni_curve(&q, p, &spec)?;
        println!("p = {p}: Lorenz {:.6}, Bonferroni {:.6}", l.value, b.value);
    }
    Ok(())
}
