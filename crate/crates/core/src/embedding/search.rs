//! Minimum-genus search over rotation systems of a single block.
//!
//! The block's edges are inserted one at a time in an order that keeps the
//! partial graph connected. Each insertion picks a corner at each endpoint.
//! An edge whose two corners lie on the same face splits it; otherwise it
//! merges two faces and the partial embedding's genus goes up by one. Genus
//! never decreases along a branch, so a branch is cut as soon as it reaches
//! the best genus already found.
//!
//! Reversing every rotation preserves face counts, so the first vertex to
//! receive a third dart only ever takes one of its two possible cyclic
//! orders.

use std::collections::VecDeque;

use crate::graph::{girth, Graph};

pub(crate) struct BlockOutcome {
    pub genus: usize,
    /// Cyclic neighbour order per block vertex.
    pub rotation: Vec<Vec<usize>>,
    pub visited: u64,
}

pub(crate) struct BudgetHit {
    /// Best genus among complete rotation systems seen, or the Euler upper
    /// bound if none was completed.
    pub best_upper: usize,
    pub visited: u64,
}

/// Euler lower bound from the girth: every face has length at least the
/// girth, so `f ≤ 2e / girth`.
pub(crate) fn girth_lower_bound(block: &Graph) -> usize {
    let (e, v) = (block.size() as i64, block.order() as i64);
    match girth(block) {
        None => 0,
        Some(gi) => {
            let f_max = 2 * e / gi as i64;
            let twice = e - v + 2 - f_max;
            if twice <= 0 {
                0
            } else {
                ((twice + 1) / 2) as usize
            }
        }
    }
}

pub(crate) fn min_genus_block(block: &Graph, budget: u64) -> Result<BlockOutcome, BudgetHit> {
    let n = block.order();
    let m = block.size();
    if m <= 1 || m + 1 == n {
        // Single edge or tree: planar, rotation is just the sorted adjacency.
        return Ok(BlockOutcome {
            genus: 0,
            rotation: (0..n).map(|v| block.neighbors(v).to_vec()).collect(),
            visited: 1,
        });
    }

    let order = insertion_order(block);
    let mut tail = vec![0usize; 2 * m];
    for (k, &(a, b)) in order.iter().enumerate() {
        tail[2 * k] = a;
        tail[2 * k + 1] = b;
    }

    // Which (edge, endpoint) is the first time some vertex gets its third
    // dart; that insertion is restricted to one corner.
    let mut count = vec![0usize; n];
    let mut symmetry_break = None;
    for (k, &(a, b)) in order.iter().enumerate() {
        for (side, v) in [(0, a), (1, b)] {
            if count[v] == 2 && symmetry_break.is_none() {
                symmetry_break = Some((k, side));
            }
            count[v] += 1;
        }
    }

    let upper = (m + 1 - n) / 2; // Euler with a single face
    let mut s = State {
        order,
        tail,
        next: vec![usize::MAX; 2 * m],
        prev: vec![usize::MAX; 2 * m],
        first: vec![usize::MAX; n],
        genus: 0,
        best: upper + 1,
        best_next: Vec::new(),
        target: girth_lower_bound(block),
        visited: 0,
        budget,
        symmetry_break,
        seen: vec![0u32; 2 * m],
        stamp: 0,
        done: false,
        out_of_budget: false,
    };
    s.search(0);

    if s.best_next.is_empty() {
        return Err(BudgetHit {
            best_upper: upper,
            visited: s.visited,
        });
    }
    if s.out_of_budget && s.best > s.target {
        return Err(BudgetHit {
            best_upper: s.best,
            visited: s.visited,
        });
    }

    // Read rotations back out of the stored successor permutation.
    let mut rotation = vec![Vec::new(); n];
    let mut start_dart = vec![usize::MAX; n];
    for d in 0..2 * m {
        let v = s.tail[d];
        if start_dart[v] == usize::MAX {
            start_dart[v] = d;
        }
    }
    for v in 0..n {
        let d0 = start_dart[v];
        if d0 == usize::MAX {
            continue;
        }
        let mut d = d0;
        loop {
            rotation[v].push(s.tail[d ^ 1]);
            d = s.best_next[d];
            if d == d0 {
                break;
            }
        }
    }
    Ok(BlockOutcome {
        genus: s.best,
        rotation,
        visited: s.visited,
    })
}

/// Breadth-first placement of vertices; each newly placed vertex brings its
/// tree edge and then every edge back to already-placed vertices, so cycles
/// close early and pruning starts early.
fn insertion_order(block: &Graph) -> Vec<(usize, usize)> {
    let n = block.order();
    let root = (0..n)
        .max_by_key(|&v| (block.degree(v), std::cmp::Reverse(v)))
        .unwrap();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(block.size());
    placed[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(w) = queue.pop_front() {
        for &x in block.neighbors(w) {
            if placed[x] {
                continue;
            }
            placed[x] = true;
            order.push((w, x));
            for &y in block.neighbors(x) {
                if y != w && placed[y] {
                    order.push((x, y));
                }
            }
            queue.push_back(x);
        }
    }
    debug_assert_eq!(order.len(), block.size());
    order
}

struct State {
    order: Vec<(usize, usize)>,
    /// Tail vertex of each dart; dart `2k` runs along edge `k` forwards and
    /// `2k + 1` backwards, so `d ^ 1` is the reverse dart.
    tail: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    first: Vec<usize>,
    genus: usize,
    best: usize,
    best_next: Vec<usize>,
    target: usize,
    visited: u64,
    budget: u64,
    symmetry_break: Option<(usize, usize)>,
    seen: Vec<u32>,
    stamp: u32,
    done: bool,
    out_of_budget: bool,
}

impl State {
    fn search(&mut self, k: usize) {
        if self.done {
            return;
        }
        if self.visited >= self.budget {
            self.out_of_budget = true;
            self.done = true;
            return;
        }
        self.visited += 1;
        if k == self.order.len() {
            if self.genus < self.best {
                self.best = self.genus;
                self.best_next = self.next.clone();
                if self.best <= self.target {
                    self.done = true;
                }
            }
            return;
        }
        let (a, b) = self.order[k];
        let (x, y) = (2 * k, 2 * k + 1);
        let corners_a = self.corners(a, k, 0);
        let corners_b = self.corners(b, k, 1);

        for &p in &corners_a {
            for &q in &corners_b {
                let merged = match (p, q) {
                    (Some(p), Some(q)) => !self.same_face(p, q),
                    _ => false,
                };
                if merged && self.genus + 1 >= self.best {
                    continue;
                }
                self.insert(x, p);
                self.insert(y, q);
                if merged {
                    self.genus += 1;
                }
                self.search(k + 1);
                if merged {
                    self.genus -= 1;
                }
                self.remove(y);
                self.remove(x);
                if self.done {
                    return;
                }
            }
        }
    }

    /// Corners available at `v`: insert after each existing dart, or `None`
    /// when `v` has no dart yet.
    fn corners(&self, v: usize, k: usize, side: usize) -> Vec<Option<usize>> {
        let d0 = self.first[v];
        if d0 == usize::MAX {
            return vec![None];
        }
        if self.symmetry_break == Some((k, side)) {
            return vec![Some(d0)];
        }
        let mut out = Vec::new();
        let mut d = d0;
        loop {
            out.push(Some(d));
            d = self.next[d];
            if d == d0 {
                break;
            }
        }
        out
    }

    /// Whether the corner after dart `p` and the corner after dart `q` lie on
    /// the same face. The corner after `p` is traversed by the face walk
    /// through `p ^ 1`; the walk's successor of `d` is `next[d ^ 1]`.
    fn same_face(&mut self, p: usize, q: usize) -> bool {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        let start = p ^ 1;
        let goal = q ^ 1;
        let mut d = start;
        loop {
            if d == goal {
                return true;
            }
            self.seen[d] = self.stamp;
            d = self.next[d ^ 1];
            if d == start || self.seen[d] == self.stamp {
                return false;
            }
        }
    }

    fn insert(&mut self, dart: usize, after: Option<usize>) {
        match after {
            None => {
                self.next[dart] = dart;
                self.prev[dart] = dart;
                self.first[self.tail[dart]] = dart;
            }
            Some(p) => {
                let nx = self.next[p];
                self.next[p] = dart;
                self.prev[dart] = p;
                self.next[dart] = nx;
                self.prev[nx] = dart;
            }
        }
    }

    fn remove(&mut self, dart: usize) {
        let v = self.tail[dart];
        if self.next[dart] == dart {
            self.first[v] = usize::MAX;
        } else {
            let (p, nx) = (self.prev[dart], self.next[dart]);
            self.next[p] = nx;
            self.prev[nx] = p;
            if self.first[v] == dart {
                self.first[v] = nx;
            }
        }
        self.next[dart] = usize::MAX;
        self.prev[dart] = usize::MAX;
    }
}
