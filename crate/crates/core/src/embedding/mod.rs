//! Orientable embeddings: face tracing for a given rotation system, exact
//! minimum genus for small graphs, and Euler-formula genus bounds that hold
//! for graphs of any size.
//!
//! # Face convention for disconnected graphs
//!
//! Each component is embedded on its own surface and the surfaces are then
//! joined, so the outer faces of the components merge into one. With that
//! convention the face count `f` satisfies
//! `g = (e − |G| − f + κ + 1) / 2` for any number of components `κ`.
//!
//! # External fact
//!
//! [`exact_genus`] relies on genus additivity over biconnected blocks
//! (Battle, Harary, Kodama and Youngs). It is not re-derived here.

mod blocks;
mod search;

pub use blocks::blocks;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{components, cycles_up_to, kernel, two_core, Graph, GraphError};

pub const DEFAULT_GENUS_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),
    #[error("search budget exhausted after visiting {visited} rotation systems; best genus found {best_upper}")]
    BudgetExceeded { best_upper: usize, visited: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A cyclic order of neighbours at every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    pub rotations: Vec<Vec<usize>>,
}

impl RotationSystem {
    /// Each vertex's neighbours in ascending order.
    pub fn sorted(g: &Graph) -> Self {
        RotationSystem {
            rotations: (0..g.order()).map(|v| g.neighbors(v).to_vec()).collect(),
        }
    }

    /// Every vertex's cyclic order reversed.
    pub fn mirrored(&self) -> Self {
        RotationSystem {
            rotations: self
                .rotations
                .iter()
                .map(|r| r.iter().rev().copied().collect())
                .collect(),
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), EmbeddingError> {
        if self.rotations.len() != g.order() {
            return Err(EmbeddingError::MalformedRotation(format!(
                "{} rotations for {} vertices",
                self.rotations.len(),
                g.order()
            )));
        }
        for (v, rot) in self.rotations.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(EmbeddingError::MalformedRotation(format!(
                    "rotation at vertex {v} is not a permutation of its neighbours"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub face_count: usize,
    /// One entry per face, ascending. Sums to `2e`.
    pub face_lengths: Vec<usize>,
    pub genus: usize,
}

/// Traces the faces of the embedding given by `rot`.
///
/// Darts are ordered pairs `(u, v)` for each edge. The face walk's successor
/// of `(u, v)` is `(v, w)` where `w` follows `u` in the rotation at `v`.
pub fn trace_faces(g: &Graph, rot: &RotationSystem) -> Result<EmbeddingReport, EmbeddingError> {
    rot.validate(g)?;
    let n = g.order();
    // Dart ids follow the CSR layout: dart (v, neighbors(v)[i]).
    let mut offset = Vec::with_capacity(n + 1);
    offset.push(0);
    for v in 0..n {
        offset.push(offset[v] + g.degree(v));
    }
    let dart = |v: usize, w: usize| offset[v] + g.neighbors(v).binary_search(&w).unwrap();
    let total = offset[n];
    let mut head = vec![0usize; total];
    let mut position = vec![0usize; total]; // index of the dart within rot[v]
    for v in 0..n {
        for (i, &w) in rot.rotations[v].iter().enumerate() {
            let d = dart(v, w);
            head[d] = w;
            position[d] = i;
        }
    }
    let successor = |d: usize, u: usize| {
        let v = head[d];
        let back = dart(v, u);
        let r = &rot.rotations[v];
        let w = r[(position[back] + 1) % r.len()];
        (dart(v, w), v)
    };

    let parts = components(g);
    let mut tail = vec![0usize; total];
    for v in 0..n {
        tail[offset[v]..offset[v + 1]].fill(v);
    }
    let mut seen = vec![false; total];
    // Per component: traced face lengths, the first of which is the one
    // merged across components.
    let mut per_component: Vec<Vec<usize>> = vec![Vec::new(); parts.kappa];
    for start in 0..total {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let (mut d, mut u) = (start, tail[start]);
        while !seen[d] {
            seen[d] = true;
            len += 1;
            (d, u) = successor(d, u);
        }
        per_component[parts.component_id[tail[start]]].push(len);
    }
    let mut merged = 0;
    let mut face_lengths = Vec::new();
    for faces in per_component {
        // An isolated vertex has no darts and a single empty face.
        let mut it = faces.into_iter();
        merged += it.next().unwrap_or(0);
        face_lengths.extend(it);
    }
    face_lengths.push(merged);
    face_lengths.sort_unstable();

    let face_count = face_lengths.len();
    let twice = g.size() as i64 - n as i64 - face_count as i64 + parts.kappa as i64 + 1;
    debug_assert!(twice >= 0 && twice % 2 == 0, "Euler parity violated");
    Ok(EmbeddingReport {
        face_count,
        face_lengths,
        genus: (twice / 2) as usize,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactGenus {
    pub genus: usize,
    /// Faces of a minimum-genus embedding, `e − |G| + κ + 1 − 2g`.
    pub f_min: usize,
    /// Partial and complete rotation systems explored, summed over blocks.
    pub visited: u64,
    /// A rotation system attaining the minimum.
    pub rotation: RotationSystem,
}

/// Minimum orientable genus by exhaustive search over rotation systems,
/// block by block. `budget` caps the search nodes visited in any one block.
pub fn exact_genus(g: &Graph, budget: u64) -> Result<ExactGenus, EmbeddingError> {
    let n = g.order();
    let mut genus = 0;
    let mut visited = 0;
    let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut failure: Option<(usize, u64)> = None;

    for block_edges in blocks(g) {
        let mut labels: Vec<usize> = block_edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        labels.sort_unstable();
        labels.dedup();
        let local = |v: usize| labels.binary_search(&v).unwrap();
        let block = Graph::from_edges(
            labels.len(),
            block_edges.iter().map(|&(u, v)| (local(u), local(v))),
        )?;
        match search::min_genus_block(&block, budget) {
            Ok(outcome) => {
                genus += outcome.genus;
                visited += outcome.visited;
                // Darts of different blocks at a cut vertex occupy disjoint
                // consecutive runs of its rotation; that keeps genus additive.
                for (lv, rot) in outcome.rotation.into_iter().enumerate() {
                    rotations[labels[lv]].extend(rot.into_iter().map(|w| labels[w]));
                }
            }
            Err(hit) => {
                let (b, vis) = failure.unwrap_or((0, 0));
                failure = Some((b + hit.best_upper, vis + hit.visited));
            }
        }
    }
    if let Some((best, vis)) = failure {
        return Err(EmbeddingError::BudgetExceeded {
            best_upper: best + genus,
            visited: vis + visited,
        });
    }
    let kappa = components(g).kappa;
    let f_min = (g.size() + kappa + 1 - n) - 2 * genus;
    Ok(ExactGenus {
        genus,
        f_min,
        visited,
        rotation: RotationSystem { rotations },
    })
}

/// `⌊(e − |G| + κ) / 2⌋`: Euler's formula with a single face.
pub fn genus_upper_bound(g: &Graph) -> usize {
    let kappa = components(g).kappa;
    (g.size() + kappa - g.order()) / 2
}

/// Lower bound from counting short cycles.
///
/// Works on the 2-core, which has the same genus and in which every face has
/// length at least three and contains a cycle. A face of length at most
/// `ell` contains a cycle of length at most `ell`, and each such cycle lies
/// in at most two faces, so with `C` short cycles there are at most `2C`
/// short faces. Since `2e ≥ 3f' + (ell + 1)(f − f')`, the total face count
/// is at most `(2e + (ell − 2)·2C) / (ell + 1)`, and also at most `2e / 3`.
/// Summed over the core's components, Euler's formula then gives
/// `g ≥ (e − v − f + 2κ) / 2`.
pub fn genus_lower_bound_short_cycles(
    g: &Graph,
    ell: usize,
    cycle_cap: usize,
) -> Result<usize, GraphError> {
    assert!(ell >= 3, "short-cycle length must be at least 3");
    let core = two_core(g).graph;
    if core.size() == 0 {
        return Ok(0);
    }
    let short = cycles_up_to(&core, ell, cycle_cap)?.len() as u128;
    Ok(lower_bound_from_face_limit(
        &core,
        face_limit(core.size() as u128, ell as u128, short),
    ))
}

/// Euler lower bound using only that every face of the 2-core has length at
/// least three (`e ≤ 3v − 6 + 6g` per component).
pub fn genus_lower_bound_density(g: &Graph) -> usize {
    let core = two_core(g).graph;
    if core.size() == 0 {
        return 0;
    }
    lower_bound_from_face_limit(&core, 2 * core.size() as u128 / 3)
}

fn face_limit(e: u128, ell: u128, short_cycles: u128) -> u128 {
    let by_cycles = (2 * e + (ell - 2) * 2 * short_cycles) / (ell + 1);
    by_cycles.min(2 * e / 3)
}

fn lower_bound_from_face_limit(core: &Graph, faces: u128) -> usize {
    let kappa = components(core).kappa as i128;
    let twice = core.size() as i128 - core.order() as i128 - faces as i128 + 2 * kappa;
    if twice <= 0 {
        0
    } else {
        ((twice + 1) / 2) as usize
    }
}

/// Short-cycle lower bound evaluated on the kernel.
///
/// Suppressing degree-two vertices changes neither the genus nor the face
/// count, but it shortens every face, so counting is done with kernel edge
/// lengths. Each short face (length at most `ell`) is charged to a distinct
/// side of a kernel cycle no longer than itself, every other face has
/// length at least `ell + 1`, and face lengths sum to `2E`. The face count
/// is therefore at most what is reached by filling `2E` greedily with the
/// shortest cycle sides first and long faces after.
pub fn genus_lower_bound_kernel(
    g: &Graph,
    ell: usize,
    cycle_cap: usize,
) -> Result<usize, GraphError> {
    assert!(ell >= 1, "kernel cycle length must be at least 1");
    let k = kernel(g);
    if k.size() == 0 {
        return Ok(0);
    }
    let counts = k.cycle_length_counts(ell, cycle_cap)?;
    let budget = 2 * k.size() as u128;
    let (mut used, mut faces) = (0u128, 0u128);
    for (len, &count) in counts.iter().enumerate().skip(1) {
        let len = len as u128;
        let fit = (2 * count).min((budget - used) / len);
        faces += fit;
        used += fit * len;
    }
    faces += (budget - used) / (ell as u128 + 1);
    let twice =
        k.size() as i128 - k.order as i128 - faces as i128 + 2 * k.component_count() as i128;
    Ok(if twice <= 0 {
        0
    } else {
        ((twice + 1) / 2) as usize
    })
}

/// Adding an edge raises the genus by at most one.
pub fn perturbation_upper_bound(base_genus: usize, k: usize) -> usize {
    base_genus + k
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    /// Counting cycles up to the given length.
    ShortCycles { ell: usize },
    /// Counting kernel cycles up to the given number of kernel edges.
    KernelCycles { ell: usize },
    /// Faces of length at least three only.
    Density,
    /// Euler's formula with one face.
    SingleFace,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusBounds {
    pub lower: usize,
    pub upper: usize,
    pub lower_method: BoundMethod,
    pub upper_method: BoundMethod,
}

/// Best of the short-cycle, kernel-cycle and density lower bounds, with the
/// single-face upper bound. A cycle bound whose enumeration hits
/// `cycle_cap` is skipped.
pub fn genus_bounds(g: &Graph, ell: usize, cycle_cap: usize) -> GenusBounds {
    let upper = genus_upper_bound(g);
    let mut lower = genus_lower_bound_density(g);
    let mut lower_method = BoundMethod::Density;
    if let Ok(l) = genus_lower_bound_short_cycles(g, ell, cycle_cap) {
        if l >= lower {
            (lower, lower_method) = (l, BoundMethod::ShortCycles { ell });
        }
    }
    if let Ok(l) = genus_lower_bound_kernel(g, ell, cycle_cap) {
        if l > lower {
            (lower, lower_method) = (l, BoundMethod::KernelCycles { ell });
        }
    }
    GenusBounds {
        lower,
        upper,
        lower_method,
        upper_method: BoundMethod::SingleFace,
    }
}
