//! Brute-force oracles and proptest strategies shared by the integration
//! tests. Everything here is deliberately naive and independent of the
//! library's algorithms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use genus_lab::graph::{Cycle, Graph};
use proptest::prelude::*;

/// Graphs on `min_n..=max_n` vertices, each pair present independently.
pub fn small_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Graphs with at most `max_m` edges, so exact genus stays cheap.
pub fn sparse_graph(min_n: usize, max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    small_graph(min_n, max_n).prop_map(move |g| {
        let edges: Vec<_> = g.edges().iter().copied().take(max_m).collect();
        Graph::from_edges(g.order(), edges).unwrap()
    })
}

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Every labelled graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    (0u64..1 << pairs).map(move |mask| {
        let bits: Vec<bool> = (0..pairs).map(|i| mask >> i & 1 == 1).collect();
        graph_from_bits(n, &bits)
    })
}

/// Simple cycles of length `3..=max_len`: for every vertex subset of that
/// size, every cyclic ordering that is a cycle of the induced subgraph.
pub fn brute_force_cycles(g: &Graph, max_len: usize) -> BTreeSet<Cycle> {
    let n = g.order();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << n {
        let subset: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if subset.len() < 3 || subset.len() > max_len {
            continue;
        }
        let (first, rest) = subset.split_first().unwrap();
        permutations(rest, &mut |perm| {
            let mut seq = vec![*first];
            seq.extend_from_slice(perm);
            let closed = (0..seq.len()).all(|i| g.has_edge(seq[i], seq[(i + 1) % seq.len()]));
            if closed {
                out.insert(Cycle::new(seq).unwrap());
            }
        });
    }
    out
}

fn permutations(items: &[usize], f: &mut impl FnMut(&[usize])) {
    fn go(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            go(v, k + 1, f);
            v.swap(k, i);
        }
    }
    go(&mut items.to_vec(), 0, f);
}

/// `(leaf_size, good, bad)` by deleting the cycle and classifying the
/// components of what is left.
pub fn brute_force_neighbourhood(g: &Graph, cycle: &[usize]) -> (usize, usize, usize) {
    let n = g.order();
    let on_c: Vec<bool> = (0..n).map(|v| cycle.contains(&v)).collect();
    // Components of G − V(C) by repeated relabelling.
    let mut comp: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for &(u, v) in g.edges() {
            if !on_c[u] && !on_c[v] && comp[u] != comp[v] {
                let m = comp[u].min(comp[v]);
                comp[u] = m;
                comp[v] = m;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let hits = |v: usize| g.neighbors(v).iter().filter(|&&w| on_c[w]).count();
    let mut in_leaf = vec![false; n];
    for root in 0..n {
        if on_c[root] || comp[root] != root {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&v| !on_c[v] && comp[v] == root).collect();
        let inner_edges = g
            .edges()
            .iter()
            .filter(|&&(u, v)| !on_c[u] && !on_c[v] && comp[u] == root)
            .count();
        let to_cycle: usize = members.iter().map(|&v| hits(v)).sum();
        if inner_edges + 1 == members.len() && to_cycle == 1 {
            for v in members {
                in_leaf[v] = true;
            }
        }
    }
    let leaf = in_leaf.iter().filter(|&&b| b).count();
    let (mut good, mut bad) = (0, 0);
    for v in 0..n {
        if on_c[v] || in_leaf[v] {
            continue;
        }
        match hits(v) {
            0 => {}
            1 => good += 1,
            _ => bad += 1,
        }
    }
    (leaf, good, bad)
}

/// Number of connected components by plain flood fill.
pub fn flood_components(g: &Graph) -> usize {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// The cycle-neighbourhood picture: a 9-cycle with pendant trees of 4 and 7
/// vertices, six good neighbours (on a triangle, on a 4-cycle, two on a
/// path touching the cycle at both ends, two on a single edge touching it
/// at both ends), two bad neighbours and a separate star.
pub fn leaf_neighbourhood_fixture() -> (Graph, Vec<usize>) {
    let cycle: Vec<usize> = (0..9).collect();
    let mut edges: Vec<(usize, usize)> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
    // Pendant tree on 27..=30 hanging from 0.
    edges.extend([(0, 27), (27, 28), (27, 29), (29, 30)]);
    // Pendant tree on 31..=37 hanging from 3.
    edges.extend([
        (3, 31),
        (31, 32),
        (32, 33),
        (32, 34),
        (31, 35),
        (35, 36),
        (36, 37),
    ]);
    // Good neighbour 9 on a triangle.
    edges.extend([(1, 9), (9, 10), (10, 11), (11, 9)]);
    // Good neighbour 12 on a 4-cycle.
    edges.extend([(5, 12), (12, 13), (13, 14), (14, 15), (15, 12)]);
    // Path 16-17-18 touching the cycle at both ends.
    edges.extend([(6, 16), (16, 17), (17, 18), (18, 7)]);
    // Edge 19-20 touching the cycle at both ends.
    edges.extend([(8, 19), (19, 20), (20, 2)]);
    // Bad neighbours.
    edges.extend([(4, 21), (21, 6), (2, 22), (22, 7)]);
    // Star away from the cycle.
    edges.extend([(23, 24), (23, 25), (23, 26)]);
    (Graph::from_edges(38, edges).unwrap(), cycle)
}
