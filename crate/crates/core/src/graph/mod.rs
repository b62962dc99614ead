//! Simple undirected graphs on `0..n` and the structural algorithms the rest
//! of the crate is built on.
//!
//! A [`Graph`] is immutable once built. Every operation here is a pure
//! function, so graphs can be shared freely across concurrent trials.

mod cycles;
mod io;
mod kernel;

pub use cycles::{cycles_up_to, Cycle, DEFAULT_CYCLE_CAP};
pub use io::{read_edge_list, write_edge_list};
pub use kernel::{kernel, Kernel};

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} appears in more than one part")]
    OverlappingParts(usize),
    #[error("cycle enumeration exceeded the cap of {cap} cycles")]
    CycleCapExceeded { cap: usize },
    #[error("{0} is not a cycle of the graph")]
    NotACycle(String),
    #[error("edge list parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A labelled simple graph.
///
/// Edges are stored normalised as `(u, v)` with `u < v`, sorted
/// lexicographically. Adjacency is kept in CSR form with each neighbour
/// list sorted ascending.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            check_pair(n, u, v)?;
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    /// Builds a graph, silently collapsing duplicate edges. Self-loops and
    /// out-of-range endpoints are still errors.
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            check_pair(n, u, v)?;
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted_unique(n, list))
    }

    fn from_sorted_unique(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut neighbors = vec![0usize; 2 * edges.len()];
        // Edges are sorted by (u, v), so pushing v into u's list and u into
        // v's list in this order leaves every neighbour list sorted.
        for &(u, v) in &edges {
            neighbors[fill[u]] = v;
            fill[u] += 1;
        }
        for &(u, v) in &edges {
            neighbors[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Graph {
            n,
            edges,
            offsets,
            neighbors,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_sorted_unique(n, edges)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star edges are valid")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Self::from_edges(a + b, edges).expect("bipartite edges are valid")
    }

    /// `rows × cols` grid graph, vertex `(r, c)` labelled `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Self::from_edges(rows * cols, edges).expect("grid edges are valid")
    }

    /// The `d`-dimensional hypercube.
    pub fn hypercube(d: u32) -> Self {
        let n = 1usize << d;
        let edges = (0..n).flat_map(|v| {
            (0..d)
                .map(move |b| (v, v ^ (1 << b)))
                .filter(|&(u, w)| u < w)
        });
        Self::from_edges(n, edges).expect("hypercube edges are valid")
    }

    /// Number of vertices, `|G|`.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges, `e(G)`.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Returns `G + extra`, collapsing pairs already present.
    pub fn union_with<I>(&self, extra: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges_dedup(self.n, self.edges.iter().copied().chain(extra))
    }

    /// Induced subgraph on `vertices`, relabelled `0..vertices.len()` in the
    /// order given.
    pub fn induced(&self, vertices: &[usize]) -> Subgraph {
        let mut old_to_new = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            old_to_new[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| old_to_new[u] != usize::MAX && old_to_new[v] != usize::MAX)
            .map(|&(u, v)| (old_to_new[u], old_to_new[v]));
        let graph = Self::from_edges(vertices.len(), edges).expect("induced edges are valid");
        Subgraph {
            graph,
            labels: vertices.to_vec(),
        }
    }
}

fn check_pair(n: usize, u: usize, v: usize) -> Result<(), GraphError> {
    if u >= n {
        return Err(GraphError::VertexOutOfRange { vertex: u, n });
    }
    if v >= n {
        return Err(GraphError::VertexOutOfRange { vertex: v, n });
    }
    if u == v {
        return Err(GraphError::SelfLoop(u));
    }
    Ok(())
}

/// A relabelled subgraph together with the original label of each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: Graph,
    /// `labels[new] = old`.
    pub labels: Vec<usize>,
}

impl Subgraph {
    /// `old → new` map over the host's vertex range; `None` for vertices
    /// outside the subgraph.
    pub fn old_to_new(&self, host_order: usize) -> Vec<Option<usize>> {
        let mut map = vec![None; host_order];
        for (new, &old) in self.labels.iter().enumerate() {
            map[old] = Some(new);
        }
        map
    }
}

/// Path-compressed, union-by-size disjoint sets.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Merges the sets of `a` and `b`; returns whether they were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPartition {
    /// Component index of every vertex. Components are numbered in order of
    /// their smallest vertex.
    pub component_id: Vec<usize>,
    /// κ(G).
    pub kappa: usize,
    pub sizes: Vec<usize>,
}

impl ComponentPartition {
    /// Vertices of each component, each list ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.kappa];
        for (v, &c) in self.component_id.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

pub fn components(g: &Graph) -> ComponentPartition {
    let n = g.order();
    let mut component_id = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if component_id[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        component_id[start] = id;
        queue.push_back(start);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &w in g.neighbors(v) {
                if component_id[w] == usize::MAX {
                    component_id[w] = id;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }
    ComponentPartition {
        component_id,
        kappa: sizes.len(),
        sizes,
    }
}

/// Mask of the vertices surviving repeated deletion of vertices of degree
/// at most one.
pub fn two_core_mask(g: &Graph) -> Vec<bool> {
    let n = g.order();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] < 2).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
                if degree[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }
    alive
}

/// The 2-core, relabelled compactly with vertices kept in ascending order of
/// their original label.
pub fn two_core(g: &Graph) -> Subgraph {
    let alive = two_core_mask(g);
    let keep: Vec<usize> = (0..g.order()).filter(|&v| alive[v]).collect();
    g.induced(&keep)
}

/// Induced subgraph on a largest component. Ties go to the component holding
/// the smallest vertex label. The edgeless graph on zero vertices yields an
/// empty subgraph.
pub fn giant_component(g: &Graph) -> Subgraph {
    let parts = components(g);
    // Components are numbered by smallest vertex, so the first maximum wins
    // the tie-break.
    let best = parts
        .sizes
        .iter()
        .enumerate()
        .fold(None, |acc: Option<(usize, usize)>, (i, &s)| match acc {
            Some((_, bs)) if bs >= s => acc,
            _ => Some((i, s)),
        });
    match best {
        None => g.induced(&[]),
        Some((id, _)) => {
            let keep: Vec<usize> = (0..g.order())
                .filter(|&v| parts.component_id[v] == id)
                .collect();
            g.induced(&keep)
        }
    }
}

/// `e(G) − |G|`.
pub fn excess(g: &Graph) -> i64 {
    g.size() as i64 - g.order() as i64
}

/// Contracts each part to a single vertex. Part `i` becomes vertex `i`;
/// edges inside a part and vertices outside every part are dropped, and
/// parallel edges collapse.
pub fn contract_sets(g: &Graph, parts: &[Vec<usize>]) -> Result<Graph, GraphError> {
    let mut owner = vec![usize::MAX; g.order()];
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            if v >= g.order() {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    n: g.order(),
                });
            }
            if owner[v] != usize::MAX {
                return Err(GraphError::OverlappingParts(v));
            }
            owner[v] = i;
        }
    }
    let mut seen = HashSet::new();
    for &(u, v) in g.edges() {
        let (a, b) = (owner[u], owner[v]);
        if a != usize::MAX && b != usize::MAX && a != b {
            seen.insert((a.min(b), a.max(b)));
        }
    }
    Graph::from_edges(parts.len(), seen)
}

/// Breadth-first distances from `source`; unreachable vertices get `None`.
pub fn bfs_distances(g: &Graph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.order()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &w in g.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Length of a shortest cycle, if any.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.order();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut touched = Vec::new();
    for s in 0..n {
        for &v in &touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
        touched.clear();
        dist[s] = 0;
        touched.push(s);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            if let Some(b) = best {
                if 2 * dist[v] + 1 >= b {
                    break;
                }
            }
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}
