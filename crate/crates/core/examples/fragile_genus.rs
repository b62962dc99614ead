//! Adding `k` random edges to a bounded-degree graph: the piece
//! decomposition, the contracted minor and the resulting genus bounds.
//!
//! cargo run --release --example fragile_genus

use genus_lab::fragile::{BaseGraph, FragileSetup};
use genus_lab::random::Seed;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        (BaseGraph::Path, 100_000, 2, 5_000),
        (BaseGraph::Grid, 40_000, 4, 2_000),
        (BaseGraph::RandomTree, 50_000, 3, 1_000),
    ];
    for (kind, n, delta, k) in cases {
        let base = kind.build(n, delta, Seed::new(3, u64::MAX))?;
        let setup = FragileSetup::new(&base, delta, k)?;
        let d = setup.decomposition.as_ref().expect("k < 6n");
        println!(
            "{kind:?} on {} vertices, k = {k}: l = {}, {} pieces, cores of {} vertices",
            base.order(),
            setup.l,
            d.t,
            d.s
        );
        for trial in 0..3 {
            let r = setup.trial(Seed::new(3, trial), 4, 1_000_000)?;
            println!(
                "  trial {trial}: e(Gamma) = {:>5}, genus in [{}, {}]",
                r.gamma_edges, r.genus_lower_gamma, r.upper_bound
            );
        }
    }

    // The degree bound matters: a star stays planar under a few edges.
    let star = genus_lab::graph::Graph::star(1_000);
    println!("\nstar: {}", FragileSetup::new(&star, 3, 20).unwrap_err());
    Ok(())
}
