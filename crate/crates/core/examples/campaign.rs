//! A small Monte Carlo campaign: every method fits the same replicated
//! samples, and bias, MSE and RMSE are tabulated per cell.
//!
//! Run with `cargo run --release --example campaign [config.toml]`; without
//! an argument a reduced version of `examples/campaign.toml` is used.

use std::path::Path;

use ntle::simulation::{run_campaign, SimulationConfig};

fn main() -> ntle::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => SimulationConfig::from_toml_file(Path::new(&path))?,
        None => {
            let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/campaign.toml");
            let mut cfg = SimulationConfig::from_toml_file(Path::new(path))?;
            cfg.replications = 50;
            cfg
        }
    };
    let report = run_campaign(&cfg)?;
    print!("{}", report.to_csv());
    Ok(())
}
