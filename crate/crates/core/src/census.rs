//! Cycle neighbourhoods and the structure of `G(n, n/2 + s)` just above the
//! critical window.
//!
//! For a cycle `C` of `G`, the leaf neighbourhood `T(C)` is the union of the
//! tree components of `G − V(C)` joined to `C` by exactly one edge. A vertex
//! outside `C ∪ T(C)` adjacent to exactly one vertex of `C` is a good
//! neighbour; adjacent to several, a bad neighbour.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::embedding::{
    genus_lower_bound_kernel, genus_lower_bound_short_cycles, genus_upper_bound,
};
use crate::graph::{
    cycles_up_to, excess, giant_component, kernel, two_core, Cycle, Graph, GraphError,
};
use crate::random::{gnm, ModelError, Seed};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleNeighborhood {
    pub cycle: Cycle,
    /// Vertices of `T(C)`.
    pub leaf_size: usize,
    pub good: usize,
    pub bad: usize,
    /// All vertices outside `V(C)` adjacent to `V(C)`: good, bad, and the
    /// attachment vertex of each tree in `T(C)`.
    pub neighbours: usize,
}

pub fn classify_cycle_neighborhood(g: &Graph, c: &Cycle) -> Result<CycleNeighborhood, GraphError> {
    if !c.is_cycle_of(g) {
        return Err(GraphError::NotACycle(format!("{:?}", c.vertices())));
    }
    let on_cycle: HashSet<usize> = c.vertices().iter().copied().collect();
    let mut attachments: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in c.vertices() {
        for &w in g.neighbors(v) {
            if !on_cycle.contains(&w) {
                *attachments.entry(w).or_default() += 1;
            }
        }
    }
    let (mut leaf_size, mut good, mut bad) = (0, 0, 0);
    for (&w, &hits) in &attachments {
        if hits > 1 {
            bad += 1;
            continue;
        }
        match pendant_tree_size(g, &on_cycle, w) {
            Some(size) => leaf_size += size,
            None => good += 1,
        }
    }
    Ok(CycleNeighborhood {
        cycle: c.clone(),
        leaf_size,
        good,
        bad,
        neighbours: attachments.len(),
    })
}

/// Size of the component of `G − V(C)` containing `w` if it is a tree with
/// a single edge to `C`. The search stops at the first cycle or second edge
/// to `C`, so large non-tree components are not explored in full.
fn pendant_tree_size(g: &Graph, on_cycle: &HashSet<usize>, w: usize) -> Option<usize> {
    let mut parent: HashMap<usize, usize> = HashMap::from([(w, usize::MAX)]);
    let mut queue = VecDeque::from([w]);
    let mut cycle_edges = 0;
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if on_cycle.contains(&y) {
                cycle_edges += 1;
                if cycle_edges > 1 {
                    return None;
                }
            } else if parent[&x] != y {
                if parent.contains_key(&y) {
                    return None;
                }
                parent.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    Some(parent.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZCount {
    pub z: usize,
    /// `x = 0.05 ln(s³/n²)`.
    pub x: f64,
    /// Cycles of length at most `⌊in/s⌋` that were examined.
    pub cycles_examined: usize,
}

/// Number of cycles with length at most `in/s`, leaf neighbourhood at most
/// `xn²/s²` vertices, between 1 and `xn/s` good neighbours and no bad
/// neighbour, where `x = 0.05 ln(s³/n²)` and `n = |G|`.
pub fn count_z(g: &Graph, s: usize, i: f64, cap: usize) -> Result<ZCount, CensusError> {
    if s == 0 || !(i >= 0.0) {
        return Err(CensusError::InvalidParameter(format!(
            "count_z needs s > 0 and i ≥ 0, got s = {s}, i = {i}"
        )));
    }
    let (n, sf) = (g.order() as f64, s as f64);
    let x = 0.05 * (sf.powi(3) / (n * n)).ln();
    let max_len = (i * n / sf).floor() as usize;
    let cycles = cycles_up_to(g, max_len, cap)?;
    let leaf_max = x * n * n / (sf * sf);
    let good_max = x * n / sf;
    let mut z = 0;
    for c in &cycles {
        let nb = classify_cycle_neighborhood(g, c)?;
        if nb.bad == 0
            && nb.good >= 1
            && nb.good as f64 <= good_max
            && nb.leaf_size as f64 <= leaf_max
        {
            z += 1;
        }
    }
    Ok(ZCount {
        z,
        x,
        cycles_examined: cycles.len(),
    })
}

/// Whether every connected subgraph on fewer than `l` vertices has at most
/// as many edges as vertices.
///
/// A smallest counterexample is two cycles sharing a vertex, or two
/// disjoint cycles joined by a path, so the search runs over pairs of
/// cycles shorter than `l`: for overlapping pairs it measures their union,
/// for disjoint pairs the shortest path between them.
pub fn fact8_check(g: &Graph, l: usize, cap: usize) -> Result<bool, CensusError> {
    if l < 1 {
        return Err(CensusError::InvalidParameter(
            "fact8_check needs l ≥ 1".into(),
        ));
    }
    // A witness has at least four vertices.
    if l <= 4 {
        return Ok(true);
    }
    let cycles = cycles_up_to(g, l - 1, cap)?;
    for (a, c1) in cycles.iter().enumerate() {
        // Disjoint partner of length ≥ 3 at distance d needs |C1| + 3 + d − 1 < l.
        let max_depth = l.saturating_sub(c1.len() + 3);
        let dist = bounded_distances(g, c1.vertices(), max_depth);
        for c2 in &cycles[a + 1..] {
            let shared = c2
                .vertices()
                .iter()
                .filter(|v| dist.get(v) == Some(&0))
                .count();
            let size = if shared > 0 {
                c1.len() + c2.len() - shared
            } else {
                match c2.vertices().iter().filter_map(|v| dist.get(v)).min() {
                    Some(&d) => c1.len() + c2.len() + d - 1,
                    None => continue,
                }
            };
            if size < l {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn bounded_distances(g: &Graph, sources: &[usize], max_depth: usize) -> HashMap<usize, usize> {
    let mut dist: HashMap<usize, usize> = sources.iter().map(|&v| (v, 0)).collect();
    let mut queue: VecDeque<usize> = sources.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        if d == max_depth {
            continue;
        }
        for &w in g.neighbors(v) {
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                e.insert(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Whether every cycle shorter than `an/s` has fewer than `a²n²/s²` leaf
/// vertices and fewer than `a²n/s` neighbours.
pub fn fact9_check(g: &Graph, a: f64, s: usize, cap: usize) -> Result<bool, CensusError> {
    if !(a > 0.0) || s == 0 {
        return Err(CensusError::InvalidParameter(format!(
            "fact9_check needs a > 0 and s > 0, got a = {a}, s = {s}"
        )));
    }
    let (n, sf) = (g.order() as f64, s as f64);
    let limit = a * n / sf;
    let max_len = (limit.ceil() as usize).saturating_sub(1);
    let leaf_max = a * a * n * n / (sf * sf);
    let neighbour_max = a * a * n / sf;
    for c in cycles_up_to(g, max_len, cap)? {
        let nb = classify_cycle_neighborhood(g, &c)?;
        if nb.leaf_size as f64 >= leaf_max || nb.neighbours as f64 >= neighbour_max {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `⌈0.1 (n/s) ln(s³/n²)⌉`: subgraphs below this many vertices should have
/// no more edges than vertices.
pub fn fact8_length(n: usize, s: usize) -> usize {
    let (n, s) = (n as f64, s as f64);
    (0.1 * (n / s) * (s.powi(3) / (n * n)).ln()).ceil().max(1.0) as usize
}

/// `½ ln(s³/n²)`.
pub fn default_a(n: usize, s: usize) -> f64 {
    let (n, s) = (n as f64, s as f64);
    0.5 * (s.powi(3) / (n * n)).ln()
}

/// `8s³/(3n²)`.
pub fn predicted_genus(n: usize, s: usize) -> f64 {
    let (n, s) = (n as f64, s as f64);
    8.0 * s.powi(3) / (3.0 * n * n)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CensusParams {
    /// Cycle-length cutoff for the genus lower bounds.
    pub ell: usize,
    /// Slowly growing parameter of the cycle-neighbourhood check; `None`
    /// means `½ ln(s³/n²)`.
    pub a: Option<f64>,
    /// Length parameter of the `Z` statistic: cycles up to `in/s`.
    pub z_i: f64,
    /// Run the two pairwise structure checks, which enumerate longer cycles.
    pub structure_checks: bool,
    pub cycle_cap: usize,
}

impl Default for CensusParams {
    fn default() -> Self {
        CensusParams {
            ell: 10,
            a: None,
            z_i: 1.0,
            structure_checks: false,
            cycle_cap: crate::graph::DEFAULT_CYCLE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupercriticalReport {
    pub n: usize,
    pub m: usize,
    pub s: usize,
    pub giant_vertices: usize,
    pub core_vertices: usize,
    pub core_edges: usize,
    pub core_excess: i64,
    pub kernel_vertices: usize,
    pub kernel_edges: usize,
    /// Cycles of length at most `ell` in the core.
    pub short_cycle_count: usize,
    pub z_value: usize,
    pub x_param: f64,
    pub a_param: f64,
    pub fact8: Option<bool>,
    pub fact9: Option<bool>,
    /// Short-cycle bound measured in core edges.
    pub genus_lower_short_cycles: usize,
    /// Short-cycle bound measured in kernel edges.
    pub genus_lower_kernel: usize,
    pub genus_lower: usize,
    pub genus_upper: usize,
    /// `8s³/(3n²)`.
    pub predicted: f64,
    pub warnings: Vec<String>,
}

/// Samples `G(n, n/2 + s)` and measures the 2-core of its giant component.
pub fn supercritical_report(
    n: usize,
    s: usize,
    seed: Seed,
    params: &CensusParams,
) -> Result<SupercriticalReport, CensusError> {
    if s == 0 || params.ell < 3 {
        return Err(CensusError::InvalidParameter(format!(
            "need s ≥ 1 and ell ≥ 3, got s = {s}, ell = {}",
            params.ell
        )));
    }
    let mut warnings = Vec::new();
    let (nf, sf) = (n as f64, s as f64);
    if sf <= nf.powf(2.0 / 3.0) || 2 * s >= n {
        warnings.push(format!(
            "s = {s} is outside n^(2/3) < s < n/2; the giant may not be unique"
        ));
    }
    let m = n / 2 + s;
    let g = gnm(n, m, seed)?;
    let giant = giant_component(&g).graph;
    let core = two_core(&giant).graph;
    let k = kernel(&core);
    let cap = params.cycle_cap;
    let short_cycle_count = cycles_up_to(&core, params.ell, cap)?.len();
    let genus_lower_short_cycles = genus_lower_bound_short_cycles(&core, params.ell, cap)?;
    let genus_lower_kernel = genus_lower_bound_kernel(&core, params.ell, cap)?;
    let z = count_z(&g, s, params.z_i, cap)?;
    let a = params.a.unwrap_or_else(|| default_a(n, s));
    let (fact8, fact9) = if params.structure_checks {
        (
            Some(fact8_check(&g, fact8_length(n, s), cap)?),
            Some(fact9_check(&g, a, s, cap)?),
        )
    } else {
        (None, None)
    };
    Ok(SupercriticalReport {
        n,
        m,
        s,
        giant_vertices: giant.order(),
        core_vertices: core.order(),
        core_edges: core.size(),
        core_excess: excess(&core),
        kernel_vertices: k.order,
        kernel_edges: k.size(),
        short_cycle_count,
        z_value: z.z,
        x_param: z.x,
        a_param: a,
        fact8,
        fact9,
        genus_lower_short_cycles,
        genus_lower_kernel,
        genus_lower: genus_lower_short_cycles.max(genus_lower_kernel),
        genus_upper: genus_upper_bound(&core),
        predicted: predicted_genus(n, s),
        warnings,
    })
}
