//! Genus of a connected bounded-degree graph `H` after adding `k` random
//! edges `R`.
//!
//! `H` is cut into `t` disjoint connected pieces of `lΔ` to `lΔ²` vertices
//! with `l = ⌈3Δn/k⌉`, each piece is trimmed to a connected core of common
//! size `s`, and the cores are contracted. Keeping only the `R`-edges
//! between distinct cores gives a minor `Γ` of `H ∪ R` on `t` vertices, so
//! any genus lower bound for `Γ` is one for `H ∪ R`.

use std::collections::{HashSet, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{genus_bounds, genus_upper_bound, perturbation_upper_bound, BoundMethod};
use crate::graph::{components, Graph, GraphError};
use crate::random::{perturb, ModelError, Seed};

#[derive(Debug, Error)]
pub enum FragileError {
    #[error("base graph is disconnected ({0} components)")]
    Disconnected(usize),
    #[error(
        "maximum degree {max_degree} exceeds Delta = {delta}; without a degree bound the \
         result fails (a star plus a few random edges stays outerplanar)"
    )]
    DegreeTooLarge { max_degree: usize, delta: usize },
    #[error("l·Delta = {needed} exceeds the {n} vertices of the base graph")]
    TooFewVertices { needed: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub l: usize,
    pub delta: usize,
    pub pieces: Vec<Vec<usize>>,
    /// Empty until [`select_cores`] runs.
    pub cores: Vec<Vec<usize>>,
    /// Smallest piece size, the common core size.
    pub s: usize,
    pub t: usize,
}

fn check_base(h: &Graph, delta: usize) -> Result<(), FragileError> {
    if delta == 0 {
        return Err(FragileError::InvalidParameter(
            "Delta must be at least 1".into(),
        ));
    }
    let max_degree = h.max_degree();
    if max_degree > delta {
        return Err(FragileError::DegreeTooLarge { max_degree, delta });
    }
    let kappa = components(h).kappa;
    if kappa != 1 {
        return Err(FragileError::Disconnected(kappa));
    }
    Ok(())
}

/// Cuts `h` into disjoint connected pieces of `lΔ` to `lΔ²` vertices
/// covering all but fewer than `lΔ` vertices.
///
/// Walks a breadth-first spanning tree bottom-up and detaches a vertex's
/// remaining subtree as soon as it holds at least `lΔ` vertices. Its child
/// subtrees are each smaller than `lΔ` and there are at most `Δ` of them,
/// which caps the piece at `1 + Δ(lΔ − 1) ≤ lΔ²`. What remains at the root
/// is discarded.
pub fn decompose(h: &Graph, l: usize, delta: usize) -> Result<Decomposition, FragileError> {
    if l == 0 {
        return Err(FragileError::InvalidParameter(
            "l must be at least 1".into(),
        ));
    }
    let n = h.order();
    let threshold = l * delta;
    if threshold > n {
        return Err(FragileError::TooFewVertices {
            needed: threshold,
            n,
        });
    }
    check_base(h, delta)?;

    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in h.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut children = vec![Vec::new(); n];
    for &v in &order[1..] {
        children[parent[v]].push(v);
    }

    let mut size = vec![0usize; n];
    let mut detached = vec![false; n];
    let mut pieces = Vec::new();
    for &v in order.iter().rev() {
        size[v] = 1 + children[v]
            .iter()
            .filter(|&&c| !detached[c])
            .map(|&c| size[c])
            .sum::<usize>();
        if size[v] >= threshold {
            let mut piece = Vec::with_capacity(size[v]);
            let mut stack = vec![v];
            while let Some(x) = stack.pop() {
                piece.push(x);
                stack.extend(children[x].iter().copied().filter(|&c| !detached[c]));
            }
            piece.sort_unstable();
            debug_assert_eq!(piece.len(), size[v]);
            detached[v] = true;
            pieces.push(piece);
        }
    }
    let s = pieces.iter().map(Vec::len).min().unwrap_or(0);
    Ok(Decomposition {
        l,
        delta,
        t: pieces.len(),
        pieces,
        cores: Vec::new(),
        s,
    })
}

/// Trims every piece to a connected core of exactly `s` vertices by
/// stripping leaves from a spanning tree of the piece.
pub fn select_cores(h: &Graph, mut d: Decomposition) -> Decomposition {
    let mut in_piece = vec![usize::MAX; h.order()];
    for (i, piece) in d.pieces.iter().enumerate() {
        for &v in piece {
            in_piece[v] = i;
        }
    }
    d.cores = d
        .pieces
        .iter()
        .enumerate()
        .map(|(i, piece)| {
            let root = piece[0];
            let mut tree_degree = std::collections::HashMap::new();
            let mut parent = std::collections::HashMap::from([(root, usize::MAX)]);
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in h.neighbors(v) {
                    if in_piece[w] == i && !parent.contains_key(&w) {
                        parent.insert(w, v);
                        *tree_degree.entry(v).or_insert(0usize) += 1;
                        *tree_degree.entry(w).or_insert(0usize) += 1;
                        queue.push_back(w);
                    }
                }
            }
            let mut alive: HashSet<usize> = piece.iter().copied().collect();
            let mut leaves: Vec<usize> = piece
                .iter()
                .copied()
                .filter(|v| tree_degree.get(v).copied().unwrap_or(0) <= 1)
                .collect();
            while alive.len() > d.s {
                let leaf = leaves
                    .pop()
                    .expect("a tree with two or more vertices has a leaf");
                alive.remove(&leaf);
                // The leaf's only live tree neighbour is its parent or, for
                // the root, its single remaining child.
                let nb = h.neighbors(leaf).iter().copied().find(|&w| {
                    alive.contains(&w)
                        && (parent.get(&leaf) == Some(&w) || parent.get(&w) == Some(&leaf))
                });
                if let Some(w) = nb {
                    let deg = tree_degree.get_mut(&w).unwrap();
                    *deg -= 1;
                    if *deg == 1 {
                        leaves.push(w);
                    }
                }
            }
            let mut core: Vec<usize> = alive.into_iter().collect();
            core.sort_unstable();
            core
        })
        .collect();
    d
}

fn core_owner(d: &Decomposition, n: usize) -> Vec<usize> {
    let mut owner = vec![usize::MAX; n];
    for (i, core) in d.cores.iter().enumerate() {
        for &v in core {
            owner[v] = i;
        }
    }
    owner
}

fn core_pair(owner: &[usize], (u, v): (usize, usize)) -> Option<(usize, usize)> {
    let (a, b) = (*owner.get(u)?, *owner.get(v)?);
    (a != usize::MAX && b != usize::MAX && a != b).then(|| (a.min(b), a.max(b)))
}

fn order_hint(d: &Decomposition, r: &[(usize, usize)]) -> usize {
    let from_cores = d.cores.iter().flatten().max().map_or(0, |&v| v + 1);
    let from_r = r.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    from_cores.max(from_r)
}

/// `Γ` on `0..t`: cores `i` and `j` are adjacent when some edge of `r`
/// joins them.
pub fn build_gamma(d: &Decomposition, r: &[(usize, usize)]) -> Graph {
    let owner = core_owner(d, order_hint(d, r));
    let pairs: HashSet<(usize, usize)> = r.iter().filter_map(|&e| core_pair(&owner, e)).collect();
    Graph::from_edges(d.t, pairs).expect("core pairs are distinct and in range")
}

/// Edges of `r`, taken in order, that join two distinct cores not already
/// joined by an earlier edge. Equals the edge count of `Γ`.
pub fn good_edge_census(d: &Decomposition, r_order: &[(usize, usize)]) -> usize {
    let owner = core_owner(d, order_hint(d, r_order));
    let mut seen = HashSet::new();
    r_order
        .iter()
        .filter_map(|&e| core_pair(&owner, e))
        .filter(|&p| seen.insert(p))
        .count()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FragileReport {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
    pub l: usize,
    pub t: usize,
    pub s: usize,
    /// `(n − lΔ)/(lΔ²)` and `n/(lΔ)`.
    pub t_bounds: (f64, f64),
    pub t_within_bounds: bool,
    pub gamma_edges: usize,
    pub good_edge_count: usize,
    pub genus_lower_gamma: usize,
    pub lower_method: BoundMethod,
    /// `k ≥ 6n`: the lower bound comes from the random edges alone.
    pub dense_branch: bool,
    /// Single-face bound of `H` plus `k`.
    pub upper_bound: usize,
    pub seed: Seed,
}

/// Everything about an experiment that does not depend on the random
/// edges, computed once and shared by all trials.
#[derive(Debug, Clone)]
pub struct FragileSetup {
    pub base: Graph,
    pub delta: usize,
    pub k: usize,
    pub l: usize,
    /// `None` in the dense branch.
    pub decomposition: Option<Decomposition>,
    pub base_upper: usize,
}

impl FragileSetup {
    pub fn new(h: &Graph, delta: usize, k: usize) -> Result<Self, FragileError> {
        if k == 0 {
            return Err(FragileError::InvalidParameter(
                "k must be at least 1".into(),
            ));
        }
        check_base(h, delta)?;
        let n = h.order();
        let l = (3 * delta * n).div_ceil(k);
        let decomposition = if k >= 6 * n {
            None
        } else {
            Some(select_cores(h, decompose(h, l, delta)?))
        };
        Ok(FragileSetup {
            base: h.clone(),
            delta,
            k,
            l,
            decomposition,
            base_upper: genus_upper_bound(h),
        })
    }

    pub fn trial(
        &self,
        seed: Seed,
        ell: usize,
        cycle_cap: usize,
    ) -> Result<FragileReport, FragileError> {
        let n = self.base.order();
        let p = perturb(&self.base, self.k, seed)?;
        let (ld, ldd) = (
            (self.l * self.delta) as f64,
            (self.l * self.delta * self.delta) as f64,
        );
        let t_bounds = ((n as f64 - ld) / ldd, n as f64 / ld);
        let upper_bound = perturbation_upper_bound(self.base_upper, self.k);
        match &self.decomposition {
            None => {
                let r = Graph::from_edges(n, p.added.iter().copied())?;
                let b = genus_bounds(&r, ell, cycle_cap);
                Ok(FragileReport {
                    n,
                    k: self.k,
                    delta: self.delta,
                    l: self.l,
                    t: 0,
                    s: 0,
                    t_bounds,
                    t_within_bounds: false,
                    gamma_edges: 0,
                    good_edge_count: 0,
                    genus_lower_gamma: b.lower,
                    lower_method: b.lower_method,
                    dense_branch: true,
                    upper_bound,
                    seed,
                })
            }
            Some(d) => {
                let gamma = build_gamma(d, &p.added);
                let good = good_edge_census(d, &p.added);
                let b = genus_bounds(&gamma, ell, cycle_cap);
                let t = d.t as f64;
                Ok(FragileReport {
                    n,
                    k: self.k,
                    delta: self.delta,
                    l: self.l,
                    t: d.t,
                    s: d.s,
                    t_bounds,
                    t_within_bounds: t_bounds.0 <= t && t <= t_bounds.1,
                    gamma_edges: gamma.size(),
                    good_edge_count: good,
                    genus_lower_gamma: b.lower,
                    lower_method: b.lower_method,
                    dense_branch: false,
                    upper_bound,
                    seed,
                })
            }
        }
    }
}

/// One trial: `l = ⌈3Δn/k⌉`, decomposition, cores, `k` random edges, `Γ`,
/// and a genus lower bound for `Γ` with cycles up to `ell`.
pub fn fragile_experiment(
    h: &Graph,
    delta: usize,
    k: usize,
    seed: Seed,
    ell: usize,
) -> Result<FragileReport, FragileError> {
    FragileSetup::new(h, delta, k)?.trial(seed, ell, crate::graph::DEFAULT_CYCLE_CAP)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseGraph {
    Path,
    Cycle,
    /// `⌊√n⌋ × ⌊n/⌊√n⌋⌋` grid, so slightly fewer than `n` vertices when `n`
    /// is not a product of that form.
    Grid,
    /// Random recursive tree with maximum degree `Δ`.
    RandomTree,
}

impl BaseGraph {
    pub fn build(self, n: usize, delta: usize, seed: Seed) -> Result<Graph, FragileError> {
        Ok(match self {
            BaseGraph::Path => Graph::path(n),
            BaseGraph::Cycle => Graph::cycle(n),
            BaseGraph::Grid => {
                let rows = (n as f64).sqrt().floor().max(1.0) as usize;
                Graph::grid(rows, n / rows)
            }
            BaseGraph::RandomTree => random_tree(n, delta, seed)?,
        })
    }
}

/// Each new vertex attaches to a uniform vertex that still has degree
/// below `delta`.
pub fn random_tree(n: usize, delta: usize, seed: Seed) -> Result<Graph, FragileError> {
    if delta < 2 && n > 2 {
        return Err(FragileError::InvalidParameter(
            "a tree on more than two vertices needs Delta ≥ 2".into(),
        ));
    }
    let mut rng = seed.rng();
    let mut degree = vec![0usize; n];
    let mut open: Vec<usize> = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n > 0 {
        open.push(0);
    }
    for v in 1..n {
        let idx = rng.gen_range(0..open.len());
        let u = open[idx];
        edges.push((u, v));
        degree[u] += 1;
        degree[v] = 1;
        if degree[u] == delta {
            open.swap_remove(idx);
        }
        if delta > 1 {
            open.push(v);
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::contract_sets;

    fn connected(h: &Graph, set: &[usize]) -> bool {
        components(&h.induced(set).graph).kappa == 1
    }

    #[test]
    fn path_decomposition() {
        let h = Graph::path(100);
        let d = select_cores(&h, decompose(&h, 5, 2).unwrap());
        assert!(d.pieces.iter().all(|p| (10..=20).contains(&p.len())));
        assert!(d.pieces.iter().map(Vec::len).sum::<usize>() >= 90);
        for (p, c) in d.pieces.iter().zip(&d.cores) {
            assert!(connected(&h, p) && connected(&h, c));
            assert_eq!(c.len(), d.s);
            assert!(c.iter().all(|v| p.contains(v)));
        }
    }

    #[test]
    fn star_is_one_piece() {
        let d = decompose(&Graph::star(4), 1, 4).unwrap();
        assert_eq!(d.t, 1);
        assert_eq!(d.pieces[0], vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            decompose(&Graph::path(5), 3, 2),
            Err(FragileError::TooFewVertices { .. })
        ));
        let err = decompose(&Graph::star(10), 1, 3).unwrap_err();
        assert!(err.to_string().contains("star"));
        let two_paths = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            decompose(&two_paths, 1, 2),
            Err(FragileError::Disconnected(2))
        ));
    }

    #[test]
    fn equal_pieces_keep_whole_cores() {
        let h = Graph::path(40);
        let d = select_cores(&h, decompose(&h, 5, 2).unwrap());
        assert_eq!(d.pieces, d.cores);
    }

    #[test]
    fn singleton_cores() {
        let h = Graph::path(2);
        let d = select_cores(&h, decompose(&h, 1, 1).unwrap());
        assert_eq!(d.s, 1);
        assert_eq!(d.cores, vec![vec![1], vec![0]]);
    }

    fn four_piece_fixture() -> Decomposition {
        Decomposition {
            l: 1,
            delta: 2,
            pieces: vec![vec![0, 1, 2], vec![3, 4, 5], vec![6], vec![7, 8, 9]],
            cores: vec![vec![0], vec![3], vec![6], vec![7]],
            s: 1,
            t: 4,
        }
    }

    #[test]
    fn gamma_of_four_pieces() {
        let d = four_piece_fixture();
        // Two edges between cores 1 and 2, one between 2 and 4, and edges
        // from core 3 that only reach non-core vertices of piece 1.
        let r = [(0, 3), (0, 3), (3, 7), (6, 1), (6, 2), (4, 9)];
        let gamma = build_gamma(&d, &r);
        assert_eq!(gamma.edges(), &[(0, 1), (1, 3)]);
        assert!(!gamma.has_edge(0, 2));
        assert_eq!(good_edge_census(&d, &r), 2);
        let r_graph = Graph::from_edges_dedup(10, r).unwrap();
        assert_eq!(contract_sets(&r_graph, &d.cores).unwrap(), gamma);
        assert_eq!(build_gamma(&d, &[]).size(), 0);
        assert_eq!(build_gamma(&d, &[(0, 0)]).size(), 0);
    }

    #[test]
    fn worked_path_example_parameters() {
        let h = Graph::path(100_000);
        let setup = FragileSetup::new(&h, 2, 5000).unwrap();
        assert_eq!(setup.l, 120);
        let d = setup.decomposition.as_ref().unwrap();
        assert!((208..=416).contains(&d.t));
    }

    #[test]
    fn dense_branch_uses_random_edges() {
        let h = Graph::cycle(50);
        let r = fragile_experiment(&h, 2, 300, Seed::new(1, 0), 3).unwrap();
        assert!(r.dense_branch);
        assert!(r.genus_lower_gamma > 0);
        assert_eq!(r.upper_bound, 300);
    }

    #[test]
    fn random_tree_respects_degree() {
        let t = random_tree(500, 3, Seed::new(4, 0)).unwrap();
        assert_eq!(t.size(), 499);
        assert!(t.max_degree() <= 3);
        assert_eq!(components(&t).kappa, 1);
    }
}
