//! The random graph models: uniform `G(n, m)`, binomial `G(n, p)`, the
//! random edge process and the perturbation of a fixed graph.
//!
//! cargo run --release --example random_models

use genus_lab::fragile::BaseGraph;
use genus_lab::graph::{components, giant_component, two_core};
use genus_lab::random::{edge_process, gnm, gnp, kappa_trajectory_until, perturb, Seed};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 100_000;
    let seed = Seed::new(7, 0);

    for c in [0.5, 1.0, 1.5, 3.0] {
        let m = (c * n as f64 / 2.0) as usize;
        let g = gnm(n, m, seed)?;
        let giant = giant_component(&g).graph;
        let core = two_core(&g).graph;
        println!(
            "G(n, {m:>6}): {:>6} components, giant {:>6}, 2-core {:>6} vertices / {:>6} edges",
            components(&g).kappa,
            giant.order(),
            core.order(),
            core.size()
        );
    }

    let g = gnp(2_000, 0.002, seed)?;
    println!(
        "\nG(2000, 0.002): {} edges (expected {:.0})",
        g.size(),
        0.002 * 1999.0 * 1000.0
    );

    let first: Vec<_> = edge_process(10, seed).take(5).collect();
    println!("first edges of the process on 10 vertices: {first:?}");
    let traj = kappa_trajectory_until(n, n, seed);
    for m in [0, n / 4, n / 2, 3 * n / 4, n] {
        println!("  after {m:>6} edges: {:>6} components", traj[m]);
    }

    let base = BaseGraph::Cycle.build(1_000, 2, seed)?;
    let p = perturb(&base, 50, Seed::new(7, 1))?;
    println!(
        "\ncycle C1000 plus 50 random edges: {} edges",
        p.graph.size()
    );
    Ok(())
}
