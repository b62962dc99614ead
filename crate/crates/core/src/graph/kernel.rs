use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{cycles_up_to, two_core, Graph, GraphError};

/// The multigraph left after taking the 2-core and suppressing every vertex
/// of degree two. It is homeomorphic to the 2-core minus its cycle
/// components, so it has the same genus and, embedded, the same faces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kernel {
    /// Number of branch vertices (core degree at least three).
    pub order: usize,
    /// Kernel edges as branch-vertex pairs `(u, v)` with `u ≤ v`; loops have
    /// `u == v` and parallel edges repeat. Sorted.
    pub edges: Vec<(usize, usize)>,
    /// Core vertex behind each kernel vertex.
    pub labels: Vec<usize>,
    /// Number of cycle components of the 2-core, dropped from the kernel.
    pub isolated_cycles: usize,
}

impl Kernel {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let mut uf = super::UnionFind::new(self.order);
        for &(u, v) in &self.edges {
            uf.union(u, v);
        }
        uf.set_count()
    }

    /// Number of cycles of each length `1..=max_len` (index = length):
    /// loops, pairs of parallel edges, and simple cycles of the underlying
    /// simple graph counted once per choice of parallel edge on each step.
    pub fn cycle_length_counts(&self, max_len: usize, cap: usize) -> Result<Vec<u128>, GraphError> {
        let mut counts = vec![0u128; max_len + 1];
        let mut multiplicity: BTreeMap<(usize, usize), u128> = BTreeMap::new();
        for &(u, v) in &self.edges {
            if u == v {
                if max_len >= 1 {
                    counts[1] += 1;
                }
            } else {
                *multiplicity.entry((u, v)).or_default() += 1;
            }
        }
        if max_len >= 2 {
            counts[2] = multiplicity.values().map(|&k| k * (k - 1) / 2).sum();
        }
        let simple = Graph::from_edges(self.order, multiplicity.keys().copied())?;
        for c in cycles_up_to(&simple, max_len, cap)? {
            let ways: u128 = c
                .edges()
                .map(|(u, v)| multiplicity[&(u.min(v), u.max(v))])
                .product();
            counts[c.len()] += ways;
        }
        Ok(counts)
    }
}

/// Kernel of `g`.
pub fn kernel(g: &Graph) -> Kernel {
    let core = two_core(g);
    let c = &core.graph;
    let n = c.order();
    let mut index = vec![usize::MAX; n];
    let mut labels = Vec::new();
    for v in 0..n {
        if c.degree(v) >= 3 {
            index[v] = labels.len();
            labels.push(v);
        }
    }
    let mut consumed: HashSet<(usize, usize)> = HashSet::new();
    let mut on_branch_path = vec![false; n];
    let mut edges = Vec::new();
    for &v in &labels {
        for &x in c.neighbors(v) {
            if consumed.contains(&(v, x)) {
                continue;
            }
            // Follow the degree-two path leaving v through x.
            let (mut prev, mut cur) = (v, x);
            while c.degree(cur) == 2 {
                on_branch_path[cur] = true;
                let nb = c.neighbors(cur);
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = next;
            }
            consumed.insert((v, x));
            consumed.insert((cur, prev));
            let (a, b) = (index[v], index[cur]);
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();

    // Whatever is left of degree two lies on cycle components.
    let mut isolated_cycles = 0;
    let mut seen = vec![false; n];
    for v in 0..n {
        if c.degree(v) != 2 || on_branch_path[v] || seen[v] {
            continue;
        }
        isolated_cycles += 1;
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(w) = stack.pop() {
            for &y in c.neighbors(w) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }

    Kernel {
        order: labels.len(),
        edges,
        labels: labels.into_iter().map(|v| core.labels[v]).collect(),
        isolated_cycles,
    }
}
