//! Component count of `G(n, λn)` against its limit `u(2λ) n`, run through
//! the seeded, parallel experiment harness. Writes the config it ran so
//! the run can be repeated with `genus-lab run --config`.
//!
//! cargo run --release --example kappa_concentration

use genus_lab::harness::{run_mc_kappa, CsvReport, Experiment, ExperimentConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = ExperimentConfig::new(
        Experiment::McKappa {
            n: 100_000,
            lambdas: vec![0.25, 0.5, 1.0, 2.0],
            tol: 1e-12,
        },
        10,
        42,
    );
    let run = run_mc_kappa(&config)?;
    for p in &run.report.summary {
        println!(
            "lambda {:>4}: mean kappa/n {:.5}, u(2 lambda) {:.5}, worst deviation {:.1e}",
            p.lambda, p.mean_kappa_over_n, p.predicted, p.max_abs_deviation
        );
    }
    println!(
        "{} trials on {} threads",
        run.report.rows.len(),
        run.metadata.threads
    );

    let path = std::env::temp_dir().join("kappa_config.json");
    config.save(&path)?;
    println!("config written to {}", path.display());

    let mut csv = Vec::new();
    run.write_csv(&mut csv)?;
    print!(
        "{}",
        String::from_utf8(csv)?
            .lines()
            .take(3)
            .collect::<Vec<_>>()
            .join("\n")
    );
    println!("\n...");
    Ok(())
}
