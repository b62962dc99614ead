use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{two_core_mask, Graph, GraphError};

/// Default cap on the number of cycles a single enumeration may return.
pub const DEFAULT_CYCLE_CAP: usize = 10_000_000;

/// A simple cycle in canonical form: the smallest vertex first, followed by
/// whichever of its two cycle neighbours is smaller.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Canonicalises a cyclic vertex sequence. Returns `None` for sequences
    /// shorter than three or with repeated vertices; adjacency in a host
    /// graph is checked separately by [`Cycle::is_cycle_of`].
    pub fn new(mut vertices: Vec<usize>) -> Option<Self> {
        let len = vertices.len();
        if len < 3 {
            return None;
        }
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let start = (0..len).min_by_key(|&i| vertices[i]).unwrap();
        vertices.rotate_left(start);
        if vertices[1] > vertices[len - 1] {
            vertices[1..].reverse();
        }
        Some(Cycle { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive vertex pairs, including the closing pair.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let len = self.vertices.len();
        (0..len).map(move |i| (self.vertices[i], self.vertices[(i + 1) % len]))
    }

    pub fn is_cycle_of(&self, g: &Graph) -> bool {
        self.vertices.iter().all(|&v| v < g.order()) && self.edges().all(|(u, v)| g.has_edge(u, v))
    }
}

/// Every simple cycle of length at most `max_len`, each exactly once, in
/// canonical form. Output is ordered by smallest vertex, then by discovery.
///
/// Only 2-core vertices can lie on a cycle, so the search never leaves the
/// 2-core. From each start vertex `s` the search stays within distance
/// `max_len / 2` of `s` and prunes any branch that cannot return to `s` in
/// the remaining length budget.
pub fn cycles_up_to(g: &Graph, max_len: usize, cap: usize) -> Result<Vec<Cycle>, GraphError> {
    let mut out = Vec::new();
    if max_len < 3 {
        return Ok(out);
    }
    let n = g.order();
    let core = two_core_mask(g);
    let radius = max_len / 2;

    let mut dist = vec![usize::MAX; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut on_path = vec![false; n];
    let mut queue = VecDeque::new();

    for s in (0..n).filter(|&v| core[v]) {
        for &v in &touched {
            dist[v] = usize::MAX;
        }
        touched.clear();
        // Ball of radius max_len/2 around s within core vertices >= s.
        dist[s] = 0;
        touched.push(s);
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            if dist[v] == radius {
                continue;
            }
            for &w in g.neighbors(v) {
                if w > s && core[w] && dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    touched.push(w);
                    queue.push_back(w);
                }
            }
        }

        let mut search = Search {
            g,
            start: s,
            max_len,
            cap,
            dist: &dist,
            on_path: &mut on_path,
            path: vec![s],
            out: &mut out,
        };
        search.on_path[s] = true;
        let result = search.extend(s);
        on_path[s] = false;
        result?;
    }
    Ok(out)
}

struct Search<'a> {
    g: &'a Graph,
    start: usize,
    max_len: usize,
    cap: usize,
    dist: &'a [usize],
    on_path: &'a mut [bool],
    path: Vec<usize>,
    out: &'a mut Vec<Cycle>,
}

impl Search<'_> {
    fn extend(&mut self, v: usize) -> Result<(), GraphError> {
        let edges_so_far = self.path.len() - 1;
        for &w in self.g.neighbors(v) {
            if w == self.start {
                // Closing edge; keep one orientation per cycle.
                if self.path.len() >= 3 && self.path[1] < v {
                    if self.out.len() >= self.cap {
                        return Err(GraphError::CycleCapExceeded { cap: self.cap });
                    }
                    self.out.push(Cycle {
                        vertices: self.path.clone(),
                    });
                }
                continue;
            }
            let d = self.dist[w];
            if d == usize::MAX || self.on_path[w] || edges_so_far + 1 + d > self.max_len {
                continue;
            }
            self.on_path[w] = true;
            self.path.push(w);
            let r = self.extend(w);
            self.path.pop();
            self.on_path[w] = false;
            r?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let c = Cycle::new(vec![4, 2, 7, 1]).unwrap();
        assert_eq!(c.vertices(), &[1, 4, 2, 7]);
        let c = Cycle::new(vec![3, 0, 5]).unwrap();
        assert_eq!(c.vertices(), &[0, 3, 5]);
        assert!(Cycle::new(vec![1, 2]).is_none());
        assert!(Cycle::new(vec![1, 2, 1]).is_none());
    }

    #[test]
    fn k4_has_seven_short_cycles() {
        let cycles = cycles_up_to(&Graph::complete(4), 4, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(cycles.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(cycles.iter().filter(|c| c.len() == 4).count(), 3);
        for c in &cycles {
            assert_eq!(Cycle::new(c.vertices().to_vec()).as_ref(), Some(c));
        }
    }

    #[test]
    fn trees_and_long_cycles() {
        assert!(cycles_up_to(&Graph::path(9), 9, DEFAULT_CYCLE_CAP)
            .unwrap()
            .is_empty());
        let c5 = Graph::cycle(5);
        assert!(cycles_up_to(&c5, 4, DEFAULT_CYCLE_CAP).unwrap().is_empty());
        let found = cycles_up_to(&c5, 5, DEFAULT_CYCLE_CAP).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].vertices(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn cap_is_enforced() {
        let err = cycles_up_to(&Graph::complete(6), 6, 10).unwrap_err();
        assert_eq!(err, GraphError::CycleCapExceeded { cap: 10 });
    }
}
