//! Bundled small graphs with known genus.
//!
//! The connected-graph corpus lists one representative of every isomorphism
//! class of connected graphs on one to six vertices. Its genus labels come
//! from a planarity test alone: every graph on at most seven vertices
//! embeds on the torus, so non-planar means genus one.

use crate::graph::Graph;

const CONNECTED_UP_TO_SIX: &str = include_str!("../data/corpus.txt");

#[derive(Debug, Clone)]
pub struct CorpusGraph {
    pub name: String,
    pub graph: Graph,
    pub genus: usize,
}

/// All 143 connected graphs on at most six vertices.
pub fn connected_up_to_six() -> Vec<CorpusGraph> {
    CONNECTED_UP_TO_SIX
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|line| {
            let mut fields = line.split_whitespace();
            let name = fields.next().expect("name").to_string();
            let n: usize = fields.next().expect("order").parse().expect("order");
            let genus: usize = fields.next().expect("genus").parse().expect("genus");
            let edges = fields.map(|e| {
                let (u, v) = e.split_once('-').expect("edge u-v");
                (u.parse().expect("u"), v.parse().expect("v"))
            });
            let graph = Graph::from_edges(n, edges).expect("corpus edges are valid");
            CorpusGraph { name, graph, genus }
        })
        .collect()
}

/// `C5` plus the chord `0-2`.
pub fn c5_plus_chord() -> Graph {
    Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap()
}

/// `K5` without the edge `0-1`.
pub fn k5_minus_edge() -> Graph {
    Graph::from_edges(
        5,
        Graph::complete(5)
            .edges()
            .iter()
            .copied()
            .filter(|&e| e != (0, 1)),
    )
    .unwrap()
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
}

/// Named graphs with their genus: the values for `K5`, `C5`, `C5` plus a
/// chord and `K5` minus an edge come with their minimum-embedding face
/// counts.
pub fn named_fixtures() -> Vec<(&'static str, Graph, usize, Option<usize>)> {
    vec![
        ("K5", Graph::complete(5), 1, Some(5)),
        ("C5", Graph::cycle(5), 0, Some(2)),
        ("C5+chord", c5_plus_chord(), 0, Some(3)),
        ("K5-edge", k5_minus_edge(), 0, Some(6)),
        ("K3,3", Graph::complete_bipartite(3, 3), 1, None),
        ("K6", Graph::complete(6), 1, None),
        ("Q3", Graph::hypercube(3), 0, None),
        ("Petersen", petersen(), 1, None),
        ("K4,4", Graph::complete_bipartite(4, 4), 1, None),
        ("K7", Graph::complete(7), 1, None),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::components;

    #[test]
    fn corpus_shape() {
        let corpus = connected_up_to_six();
        assert_eq!(corpus.len(), 143);
        let by_order = |n| corpus.iter().filter(|c| c.graph.order() == n).count();
        assert_eq!([1, 2, 3, 4, 5, 6].map(by_order), [1, 1, 2, 6, 21, 112]);
        assert!(corpus.iter().all(|c| components(&c.graph).kappa == 1));
    }
}
