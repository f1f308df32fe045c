//! Subgraph detectors for the four target families.
//!
//! Every detector answers "does this colour class contain a copy of the
//! pattern" under plain subgraph (not induced) semantics and, when it does,
//! hands back one explicit copy as a list of edge ids. A colour class is the
//! spanning subgraph of the host formed by the given edges.

mod enumerate;
pub mod matching;
mod observation;

use alloc::vec;
use alloc::vec::Vec;

pub use enumerate::{count_copies, for_each_copy};
pub use observation::{check_observation1, HostTally, ObservationReport};

use crate::edgeset::EdgeSet;
use crate::pattern::TargetPattern;
use crate::shape::{EdgeId, PartitionShape};

/// Neighbour masks, one `u128` per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    rows: Vec<u128>,
}

impl Adjacency {
    pub fn empty(vertex_count: usize) -> Self {
        assert!(vertex_count <= crate::shape::MAX_VERTICES);
        Adjacency {
            rows: vec![0; vertex_count],
        }
    }

    pub fn from_set(host: &PartitionShape, s: &EdgeSet) -> Self {
        let mut adj = Self::empty(host.vertex_count());
        for e in s.iter() {
            let (u, v) = host.endpoints(e);
            adj.add_edge(u, v);
        }
        adj
    }

    pub fn rows(&self) -> &[u128] {
        &self.rows
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> u128 {
        self.rows[v]
    }

    /// Copy with every edge at `u` or `v` deleted.
    pub fn without_vertices(&self, u: usize, v: usize) -> Self {
        let keep = !((1u128 << u) | (1u128 << v));
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(w, &r)| if w == u || w == v { 0 } else { r & keep })
            .collect();
        Adjacency { rows }
    }
}

#[inline]
pub(crate) fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// Mask of the vertices strictly above `v`.
#[inline]
pub(crate) fn above(v: usize) -> u128 {
    u128::MAX.checked_shl(v as u32 + 1).unwrap_or(0)
}

/// Outcome of a containment query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectorResult {
    /// One copy of the pattern when found. Always present on success.
    pub witness: Option<Vec<EdgeId>>,
}

impl DetectorResult {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }

    fn absent() -> Self {
        DetectorResult { witness: None }
    }
}

/// A maximum matching of a colour class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingState {
    pub edges: Vec<EdgeId>,
}

impl MatchingState {
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

fn vertex_path_edges(host: &PartitionShape, vs: &[usize], closed: bool) -> Vec<EdgeId> {
    let mut out: Vec<EdgeId> = vs
        .windows(2)
        .map(|w| host.id_of(w[0], w[1]).expect("path step is a host edge"))
        .collect();
    if closed {
        out.push(host.id_of(vs[vs.len() - 1], vs[0]).expect("closing edge is a host edge"));
    }
    out
}

// ---------------------------------------------------------------------------
// Vertex-level searches on adjacency masks

/// A vertex of degree at least `m` and `m` of its neighbours.
pub(crate) fn find_star(adj: &Adjacency, m: usize) -> Option<(usize, Vec<usize>)> {
    (0..adj.vertex_count())
        .find(|&v| adj.degree(v) >= m)
        .map(|v| (v, bits(adj.neighbors(v)).take(m).collect()))
}

fn grow_path(adj: &[u128], path: &mut Vec<usize>, used: u128, p: usize) -> bool {
    if path.len() == p {
        return true;
    }
    let last = path[path.len() - 1];
    for w in bits(adj[last] & !used) {
        path.push(w);
        if grow_path(adj, path, used | 1 << w, p) {
            return true;
        }
        path.pop();
    }
    false
}

/// Vertices of a simple path on `p` vertices.
pub(crate) fn find_path(adj: &Adjacency, p: usize) -> Option<Vec<usize>> {
    let rows = adj.rows();
    if p == 0 || p > rows.len() {
        return None;
    }
    let mut path = Vec::with_capacity(p);
    for s in 0..rows.len() {
        if p > 1 && rows[s] == 0 {
            continue;
        }
        path.clear();
        path.push(s);
        if grow_path(rows, &mut path, 1 << s, p) {
            return Some(path);
        }
    }
    None
}

/// Extends `path` (ending anywhere, `used` marks its vertices) until it has
/// `k` vertices and its last vertex is adjacent to `target`.
fn close_to(adj: &[u128], path: &mut Vec<usize>, used: u128, k: usize, target: usize) -> bool {
    let last = path[path.len() - 1];
    let missing = k - path.len();
    if missing == 0 {
        return adj[last] >> target & 1 == 1;
    }
    let free = adj[last] & !used;
    if missing == 1 {
        // one more vertex, adjacent to both `last` and `target`
        let w = free & adj[target];
        if w != 0 {
            path.push(w.trailing_zeros() as usize);
            return true;
        }
        return false;
    }
    for w in bits(free) {
        path.push(w);
        if close_to(adj, path, used | 1 << w, k, target) {
            return true;
        }
        path.pop();
    }
    false
}

/// Vertices of a simple cycle on exactly `k` vertices, starting at its
/// smallest vertex.
pub(crate) fn find_cycle(adj: &Adjacency, k: usize) -> Option<Vec<usize>> {
    let rows = adj.rows();
    let n = rows.len();
    if k < 3 || k > n {
        return None;
    }
    let mut path = Vec::with_capacity(k);
    for a in 0..n {
        // anchor is the minimum vertex of the cycle
        let below = !above(a);
        let allowed: Vec<u128> = rows.iter().map(|&r| r & !below).collect();
        if allowed[a].count_ones() < 2 {
            continue;
        }
        for b in bits(allowed[a]) {
            path.clear();
            path.push(a);
            path.push(b);
            if closes_raw(rows, &allowed, &mut path, below | 1 << b, k, a) {
                return Some(path);
            }
        }
    }
    None
}

/// `close_to` over `allowed` rows, but with the final adjacency test against
/// the anchor done on the unrestricted rows.
fn closes_raw(
    rows: &[u128],
    allowed: &[u128],
    path: &mut Vec<usize>,
    used: u128,
    k: usize,
    anchor: usize,
) -> bool {
    let last = path[path.len() - 1];
    let missing = k - path.len();
    if missing == 0 {
        return rows[last] >> anchor & 1 == 1;
    }
    let free = allowed[last] & !used;
    if missing == 1 {
        let w = free & rows[anchor];
        if w != 0 {
            path.push(w.trailing_zeros() as usize);
            return true;
        }
        return false;
    }
    for w in bits(free) {
        path.push(w);
        if closes_raw(rows, allowed, path, used | 1 << w, k, anchor) {
            return true;
        }
        path.pop();
    }
    false
}

// ---------------------------------------------------------------------------
// Incremental tests: would adding edge (u, v) create a copy?

/// Some simple path from `start` with `extra` more vertices avoiding `used`;
/// returns the vertices appended.
fn any_path_from(adj: &[u128], start: usize, extra: usize, used: u128) -> bool {
    if extra == 0 {
        return true;
    }
    for w in bits(adj[start] & !used) {
        if any_path_from(adj, w, extra - 1, used | 1 << w) {
            return true;
        }
    }
    false
}

fn left_then_right(
    adj: &[u128],
    at: usize,
    left: usize,
    right_from: usize,
    right: usize,
    used: u128,
) -> bool {
    if left == 0 {
        return any_path_from(adj, right_from, right, used);
    }
    for w in bits(adj[at] & !used) {
        if left_then_right(adj, w, left - 1, right_from, right, used | 1 << w) {
            return true;
        }
    }
    false
}

pub(crate) fn path_through(adj: &[u128], u: usize, v: usize, p: usize) -> bool {
    if p < 2 {
        return false;
    }
    let extra = p - 2;
    let used = (1u128 << u) | (1u128 << v);
    (0..=extra).any(|left| left_then_right(adj, u, left, v, extra - left, used))
}

pub(crate) fn cycle_through(adj: &[u128], u: usize, v: usize, k: usize) -> bool {
    if k < 3 {
        return false;
    }
    // a path u .. v on k vertices
    let mut path = Vec::with_capacity(k);
    path.push(u);
    close_to(adj, &mut path, (1u128 << u) | (1u128 << v), k - 1, v)
}

/// True iff adding `(u, v)` to `adj` creates a copy of `pat` that uses the
/// new edge. For a pattern-free `adj` this is exactly "the result contains
/// `pat`".
pub fn extends_adjacency(adj: &Adjacency, u: usize, v: usize, pat: TargetPattern) -> bool {
    match pat {
        TargetPattern::Star(m) => adj.degree(u) + 1 >= m || adj.degree(v) + 1 >= m,
        TargetPattern::Path(p) => path_through(adj.rows(), u, v, p),
        TargetPattern::Cycle(k) => cycle_through(adj.rows(), u, v, k),
        TargetPattern::Stripe(n) => {
            let rest = adj.without_vertices(u, v);
            matching::matching_size(&matching::maximum_matching(&rest)) + 1 >= n
        }
    }
}

// ---------------------------------------------------------------------------
// Public edge-set API

pub fn contains_star(host: &PartitionShape, s: &EdgeSet, m: usize) -> DetectorResult {
    let adj = Adjacency::from_set(host, s);
    match find_star(&adj, m) {
        Some((c, leaves)) => DetectorResult {
            witness: Some(
                leaves
                    .iter()
                    .map(|&l| host.id_of(c, l).expect("star edge"))
                    .collect(),
            ),
        },
        None => DetectorResult::absent(),
    }
}

pub fn contains_path(host: &PartitionShape, s: &EdgeSet, p: usize) -> DetectorResult {
    let adj = Adjacency::from_set(host, s);
    match find_path(&adj, p) {
        Some(vs) => DetectorResult {
            witness: Some(vertex_path_edges(host, &vs, false)),
        },
        None => DetectorResult::absent(),
    }
}

pub fn contains_cycle(host: &PartitionShape, s: &EdgeSet, k: usize) -> DetectorResult {
    let adj = Adjacency::from_set(host, s);
    match find_cycle(&adj, k) {
        Some(vs) => DetectorResult {
            witness: Some(vertex_path_edges(host, &vs, true)),
        },
        None => DetectorResult::absent(),
    }
}

/// Maximum matching of the class; its size is the matching number.
pub fn matching_number(host: &PartitionShape, s: &EdgeSet) -> MatchingState {
    let adj = Adjacency::from_set(host, s);
    let mate = matching::maximum_matching(&adj);
    MatchingState {
        edges: matching::matched_pairs(&mate)
            .into_iter()
            .map(|(u, v)| host.id_of(u, v).expect("matched pair is a host edge"))
            .collect(),
    }
}

pub fn contains_stripe(host: &PartitionShape, s: &EdgeSet, n: usize) -> DetectorResult {
    let m = matching_number(host, s);
    if m.size() >= n {
        let mut edges = m.edges;
        edges.truncate(n);
        DetectorResult {
            witness: Some(edges),
        }
    } else {
        DetectorResult::absent()
    }
}

/// Batch containment for any target.
pub fn contains(host: &PartitionShape, s: &EdgeSet, pat: TargetPattern) -> DetectorResult {
    match pat {
        TargetPattern::Star(m) => contains_star(host, s, m),
        TargetPattern::Path(p) => contains_path(host, s, p),
        TargetPattern::Stripe(n) => contains_stripe(host, s, n),
        TargetPattern::Cycle(k) => contains_cycle(host, s, k),
    }
}

/// Whether adding `new_edge` to `s` creates a copy of `pat` through it.
pub fn extends_to_pattern(
    host: &PartitionShape,
    s: &EdgeSet,
    new_edge: EdgeId,
    pat: TargetPattern,
) -> bool {
    debug_assert!(!s.contains(new_edge));
    let adj = Adjacency::from_set(host, s);
    let (u, v) = host.endpoints(new_edge);
    extends_adjacency(&adj, u, v, pat)
}

/// Structural check that `edges` is one copy of `pat`: degree sequence and
/// connectivity for stars, paths and cycles, pairwise disjointness for
/// stripes. Edges must be distinct.
pub fn is_copy_of(host: &PartitionShape, edges: &[EdgeId], pat: TargetPattern) -> bool {
    if edges.len() != pat.edge_count() {
        return false;
    }
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != edges.len() || sorted.iter().any(|&e| e >= host.edge_count()) {
        return false;
    }
    let mut adj = Adjacency::empty(host.vertex_count());
    let mut touched = 0u128;
    for &e in edges {
        let (u, v) = host.endpoints(e);
        adj.add_edge(u, v);
        touched |= (1 << u) | (1 << v);
    }
    let degs: Vec<usize> = bits(touched).map(|v| adj.degree(v)).collect();
    let connected = || {
        let Some(start) = bits(touched).next() else {
            return true;
        };
        let mut seen = 1u128 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= adj.neighbors(v);
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == touched
    };
    match pat {
        // P1 has no edges: any vertex is a copy
        TargetPattern::Path(1) => edges.is_empty(),
        TargetPattern::Stripe(n) => degs.len() == 2 * n && degs.iter().all(|&d| d == 1),
        TargetPattern::Star(1) => degs.len() == 2,
        TargetPattern::Star(m) => {
            degs.len() == m + 1
                && degs.iter().filter(|&&d| d == m).count() == 1
                && degs.iter().filter(|&&d| d == 1).count() == m
        }
        TargetPattern::Path(p) => {
            degs.len() == p
                && degs.iter().filter(|&&d| d == 1).count() == 2
                && degs.iter().all(|&d| d <= 2)
                && connected()
        }
        TargetPattern::Cycle(k) => degs.len() == k && degs.iter().all(|&d| d == 2) && connected(),
    }
}

#[cfg(test)]
mod tests;
