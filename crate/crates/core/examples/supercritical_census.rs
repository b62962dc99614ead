//! Census of the giant 2-core of `G(n, n/2 + s)` just above the phase
//! transition: excess, kernel, short cycles and genus bounds.
//!
//! cargo run --release --example supercritical_census -- [n] [s]

use genus_lab::census::{supercritical_report, CensusParams};
use genus_lab::random::Seed;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>());
    let n = args.next().transpose()?.unwrap_or(200_000);
    let s = args
        .next()
        .transpose()?
        .unwrap_or((n as f64).powf(0.75) as usize);
    let params = CensusParams {
        structure_checks: true,
        ..CensusParams::default()
    };

    for trial in 0..3 {
        let r = supercritical_report(n, s, Seed::new(1, trial), &params)?;
        println!(
            "trial {trial}: m = {}, giant {} vertices",
            r.m, r.giant_vertices
        );
        println!(
            "  2-core {} vertices, excess {} ({:.1} expected), kernel {} / {}",
            r.core_vertices,
            r.core_excess,
            2.0 * r.predicted,
            r.kernel_vertices,
            r.kernel_edges
        );
        println!(
            "  genus in [{}, {}], prediction {:.1}; Z = {}; dense pairs absent: {:?}",
            r.genus_lower, r.genus_upper, r.predicted, r.z_value, r.fact8
        );
        for w in &r.warnings {
            println!("  warning: {w}");
        }
    }
    Ok(())
}
