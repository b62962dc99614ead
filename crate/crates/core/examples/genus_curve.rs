//! Genus bounds per edge of `G(n, m)` over a grid of `m`, next to the
//! predicted curve, as CSV.
//!
//! cargo run --release --example genus_curve > curve.csv

use genus_lab::harness::{run_genus_curve, write_genus_curve, Experiment, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 2_000;
    let ms = (1..=16).map(|k| k * n / 4).collect();
    let config = ExperimentConfig::new(Experiment::GenusCurve { n, ms, ell: 4 }, 5, 0);
    let run = run_genus_curve(&config)?;
    write_genus_curve(std::io::stdout().lock(), &run.report.summary)?;
    Ok(())
}
