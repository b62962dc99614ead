//! Predicted genus of `G(n, m)` across the density scale, and whether a
//! genus constraint is visible to a uniformly random graph.
//!
//! cargo run --release --example regime_prediction

use genus_lab::asymptotics::{contiguity_verdict, predict_genus, RegimeConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = RegimeConfig::default();
    let n: u64 = 1_000_000;
    let nf = n as f64;
    let ms = [
        n / 4,
        n / 2,
        n / 2 + nf.powf(0.75) as u64,
        n,
        nf.powf(1.04) as u64,
        3 * n,
        nf.powf(1.5) as u64,
        n * (n - 1) / 8,
    ];
    println!("{:>14} {:<24} {:>14} {:>14}", "m", "regime", "lo", "hi");
    for m in ms {
        let p = predict_genus(n, m, &config)?;
        println!(
            "{m:>14} {:<24} {:>14.1} {:>14.1}",
            p.regime.name(),
            p.lo,
            p.hi
        );
    }

    println!();
    let m = 3 * n;
    let typical = predict_genus(n, m, &config)?.midpoint();
    for factor in [0.5, 1.0, 2.0] {
        let g = factor * typical;
        let verdict = contiguity_verdict(n, Some(m), g, 0.1, &config)?;
        println!("genus ≤ {g:>12.0} versus G(n, 3n): {verdict}");
    }
    Ok(())
}
