//! Model comparison on a dataset: exponential, logistic-exponential and the
//! full model fitted by maximum likelihood and by the generalized
//! goodness-of-fit estimator.
//!
//! Run with `cargo run --release --example compare [data.txt]`; without an
//! argument a simulated sample of 77 observations is used.

use std::path::Path;

use ntle::dataset::read_dataset;
use ntle::estimation::{EstimationMethod, FitOptions, Sample};
use ntle::gof::{compare_models, emit_plot_data};
use ntle::NtleParams;

fn main() -> ntle::Result<()> {
    let s = match std::env::args().nth(1) {
        Some(path) => read_dataset(Path::new(&path))?,
        None => Sample::new(NtleParams::new(0.0085, 0.4732, -0.583)?.sample(77, 1)?)?,
    };
    let report = compare_models(&s, &[EstimationMethod::Mle, EstimationMethod::Mgfe], &FitOptions::default());
    print!("{}", report.to_text_table());

    let plot = emit_plot_data(&report, &s, 200)?;
    println!("\nplot data: {} rows, header {}", plot.column("y").map_or(0, |c| c.len()), plot.header());
    println!("histogram bins: {}", plot.histogram.len());
    Ok(())
}
