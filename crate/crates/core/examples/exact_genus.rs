//! Minimum genus of small named graphs, checked against the Euler bounds,
//! and the faces of the embedding the search found.
//!
//! cargo run --release --example exact_genus

use genus_lab::corpus::petersen;
use genus_lab::embedding::{exact_genus, genus_bounds, trace_faces, DEFAULT_GENUS_BUDGET};
use genus_lab::graph::{Graph, DEFAULT_CYCLE_CAP};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graphs = [
        ("K5", Graph::complete(5)),
        ("K6", Graph::complete(6)),
        ("K3,3", Graph::complete_bipartite(3, 3)),
        ("K4,4", Graph::complete_bipartite(4, 4)),
        ("Q4", Graph::hypercube(4)),
        ("Petersen", petersen()),
        ("5x5 grid", Graph::grid(5, 5)),
    ];
    println!(
        "{:<10} {:>3} {:>3} {:>5} {:>5} {:>5} {:>9}",
        "graph", "n", "e", "lower", "genus", "upper", "nodes"
    );
    for (name, g) in &graphs {
        let b = genus_bounds(g, 6, DEFAULT_CYCLE_CAP);
        let exact = exact_genus(g, DEFAULT_GENUS_BUDGET)?;
        assert!(b.lower <= exact.genus && exact.genus <= b.upper);
        println!(
            "{name:<10} {:>3} {:>3} {:>5} {:>5} {:>5} {:>9}",
            g.order(),
            g.size(),
            b.lower,
            exact.genus,
            b.upper,
            exact.visited
        );
    }

    let k6 = Graph::complete(6);
    let best = exact_genus(&k6, DEFAULT_GENUS_BUDGET)?;
    let faces = trace_faces(&k6, &best.rotation)?;
    println!(
        "\nK6 on the torus: {} faces of lengths {:?}",
        faces.face_count, faces.face_lengths
    );
    Ok(())
}
