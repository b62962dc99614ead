//! Seeded random graph models.
//!
//! Every generator is a pure function of its parameters and a [`Seed`]. A
//! seed's `(master, trial_index)` pair selects a ChaCha8 key and stream, so
//! trials run in any order (or concurrently) draw identical graphs.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, UnionFind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("edge count {requested} out of range: at most {max} pairs exist")]
    EdgeCountOutOfRange { requested: u64, max: u64 },
    #[error("probability {0} is not in [0, 1]")]
    ProbabilityOutOfRange(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    pub master: u64,
    pub trial_index: u64,
}

impl Seed {
    pub fn new(master: u64, trial_index: u64) -> Self {
        Seed {
            master,
            trial_index,
        }
    }

    pub fn trial(self, trial_index: u64) -> Self {
        Seed {
            trial_index,
            ..self
        }
    }

    pub fn rng(self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(self.trial_index);
        rng
    }
}

/// `C(n, 2)`.
pub fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Rank of the pair `{u, v}` in colexicographic order: `(0,1), (0,2), (1,2),
/// (0,3), …`.
pub fn pair_rank(u: usize, v: usize) -> u64 {
    let (u, v) = (u.min(v) as u64, u.max(v) as u64);
    v * (v - 1) / 2 + u
}

/// Inverse of [`pair_rank`].
pub fn pair_unrank(rank: u64) -> (usize, usize) {
    let mut v = ((1.0 + (1.0 + 8.0 * rank as f64).sqrt()) / 2.0).floor() as u64;
    while v * (v - 1) / 2 > rank {
        v -= 1;
    }
    while (v + 1) * v / 2 <= rank {
        v += 1;
    }
    let u = rank - v * (v - 1) / 2;
    (u as usize, v as usize)
}

/// A uniformly random ordering of all `C(n, 2)` vertex pairs, produced
/// lazily by a Fisher–Yates shuffle whose displaced entries live in a hash
/// map. The first `m` pairs form a uniform `G(n, m)` edge set.
#[derive(Debug, Clone)]
pub struct EdgeProcess {
    n: usize,
    total: u64,
    drawn: u64,
    displaced: HashMap<u64, u64>,
    rng: ChaCha8Rng,
}

pub fn edge_process(n: usize, seed: Seed) -> EdgeProcess {
    EdgeProcess {
        n,
        total: pair_count(n),
        drawn: 0,
        displaced: HashMap::new(),
        rng: seed.rng(),
    }
}

impl EdgeProcess {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn remaining(&self) -> u64 {
        self.total - self.drawn
    }
}

impl Iterator for EdgeProcess {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<Self::Item> {
        if self.drawn == self.total {
            return None;
        }
        let i = self.drawn;
        let j = self.rng.gen_range(i..self.total);
        let at_i = self.displaced.remove(&i).unwrap_or(i);
        let picked = if j == i {
            at_i
        } else {
            self.displaced.insert(j, at_i).unwrap_or(j)
        };
        self.drawn += 1;
        Some(pair_unrank(picked))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.remaining() as usize;
        (left, Some(left))
    }
}

/// Uniform random graph on `0..n` with exactly `m` edges.
pub fn gnm(n: usize, m: usize, seed: Seed) -> Result<Graph, ModelError> {
    Ok(Graph::from_edges(n, gnm_edges(n, m, seed)?).expect("sampled pairs are distinct"))
}

/// The edges of [`gnm`] in their sampled (uniformly random) order.
pub fn gnm_edges(n: usize, m: usize, seed: Seed) -> Result<Vec<(usize, usize)>, ModelError> {
    let max = pair_count(n);
    if m as u64 > max {
        return Err(ModelError::EdgeCountOutOfRange {
            requested: m as u64,
            max,
        });
    }
    Ok(edge_process(n, seed).take(m).collect())
}

/// Binomial random graph: each pair independently with probability `p`.
///
/// Uses geometric skipping over pair ranks, so the cost is proportional to
/// the number of edges drawn rather than to `C(n, 2)`.
pub fn gnp(n: usize, p: f64, seed: Seed) -> Result<Graph, ModelError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ModelError::ProbabilityOutOfRange(p));
    }
    let total = pair_count(n);
    let mut edges = Vec::new();
    if p == 1.0 {
        edges.extend((0..total).map(pair_unrank));
    } else if p > 0.0 {
        let mut rng = seed.rng();
        let log_q = (1.0 - p).ln();
        let mut rank: u64 = 0;
        loop {
            let u: f64 = 1.0 - rng.gen::<f64>(); // (0, 1]
            let skip = (u.ln() / log_q).floor();
            if skip >= (total - rank) as f64 {
                break;
            }
            rank += skip as u64;
            edges.push(pair_unrank(rank));
            rank += 1;
            if rank >= total {
                break;
            }
        }
    }
    Ok(Graph::from_edges(n, edges).expect("sampled pairs are distinct"))
}

/// κ after each insertion of the edge process, for all `C(n, 2)` steps.
/// Entry 0 is `n`.
pub fn kappa_trajectory(n: usize, seed: Seed) -> Vec<usize> {
    kappa_trajectory_until(n, pair_count(n) as usize, seed)
}

/// The first `steps + 1` entries of [`kappa_trajectory`].
pub fn kappa_trajectory_until(n: usize, steps: usize, seed: Seed) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(n);
    for (u, v) in edge_process(n, seed).take(steps) {
        uf.union(u, v);
        out.push(uf.set_count());
    }
    out
}

#[derive(Debug, Clone)]
pub struct Perturbation {
    /// `H ∪ R`.
    pub graph: Graph,
    /// The `k` random pairs of `R` in insertion order. Pairs already in `H`
    /// are kept here even though the union absorbs them.
    pub added: Vec<(usize, usize)>,
}

/// Adds a uniform `k`-subset of vertex pairs to `base`.
pub fn perturb(base: &Graph, k: usize, seed: Seed) -> Result<Perturbation, ModelError> {
    let added = gnm_edges(base.order(), k, seed)?;
    let graph = base
        .union_with(added.iter().copied())
        .expect("sampled pairs are valid");
    Ok(Perturbation { graph, added })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::components;

    #[test]
    fn pair_rank_bijection() {
        let mut expected = 0;
        for v in 1..60 {
            for u in 0..v {
                assert_eq!(pair_rank(u, v), expected);
                assert_eq!(pair_unrank(expected), (u, v));
                expected += 1;
            }
        }
        let big = pair_count(1_000_000) - 1;
        assert_eq!(pair_unrank(big), (999_998, 999_999));
    }

    #[test]
    fn gnm_extremes() {
        let s = Seed::new(7, 0);
        assert_eq!(gnm(5, 0, s).unwrap().size(), 0);
        assert_eq!(gnm(5, 10, s).unwrap(), Graph::complete(5));
        assert_eq!(
            gnm(5, 11, s),
            Err(ModelError::EdgeCountOutOfRange {
                requested: 11,
                max: 10
            })
        );
    }

    #[test]
    fn gnp_extremes() {
        let s = Seed::new(7, 3);
        assert_eq!(gnp(30, 0.0, s).unwrap().size(), 0);
        assert_eq!(gnp(30, 1.0, s).unwrap(), Graph::complete(30));
        assert!(gnp(30, 1.5, s).is_err());
        assert!(gnp(30, -0.1, s).is_err());
    }

    #[test]
    fn edge_process_is_a_permutation() {
        let pairs: Vec<_> = edge_process(12, Seed::new(1, 1)).collect();
        assert_eq!(pairs.len(), 66);
        let mut ranks: Vec<u64> = pairs.iter().map(|&(u, v)| pair_rank(u, v)).collect();
        ranks.sort_unstable();
        assert_eq!(ranks, (0..66).collect::<Vec<_>>());
        assert_eq!(edge_process(12, Seed::new(1, 1)).take(0).count(), 0);
    }

    #[test]
    fn trajectory_shape() {
        let t = kappa_trajectory(40, Seed::new(5, 2));
        assert_eq!(t.len(), 781);
        assert_eq!(t[0], 40);
        assert_eq!(*t.last().unwrap(), 1);
        assert!(t.windows(2).all(|w| w[0] == w[1] || w[0] == w[1] + 1));
        let g = gnm(40, 25, Seed::new(5, 2)).unwrap();
        assert_eq!(t[25], components(&g).kappa);
    }

    #[test]
    fn perturb_contract() {
        let h = Graph::cycle(10);
        let p = perturb(&h, 0, Seed::new(3, 0)).unwrap();
        assert_eq!(p.graph, h);
        assert!(p.added.is_empty());
        let p = perturb(&h, 20, Seed::new(3, 1)).unwrap();
        assert_eq!(p.added.len(), 20);
        assert!(p.graph.size() <= h.size() + 20);
        assert!(h.edges().iter().all(|&(u, v)| p.graph.has_edge(u, v)));
        assert!(perturb(&h, 46, Seed::new(3, 1)).is_err());
    }

    #[test]
    fn seeds_are_reproducible_and_distinct() {
        let a = gnm(200, 300, Seed::new(9, 4)).unwrap();
        let b = gnm(200, 300, Seed::new(9, 4)).unwrap();
        let c = gnm(200, 300, Seed::new(9, 5)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
