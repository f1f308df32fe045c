//! Complete multipartite host graphs `K_{j×t}` and their canonical edge table.
//!
//! Vertices are dense part-major ids: vertex `part * t + slot`. Edges are the
//! cross-part pairs `(u, v)` with `u < v`, numbered in lexicographic order.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::edgeset::EdgeSet;

/// Index of an edge in the canonical edge table of a [`PartitionShape`].
pub type EdgeId = usize;

/// Largest supported vertex count. Detectors keep one `u128` neighbour mask
/// per vertex.
pub const MAX_VERTICES: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("number of parts must be at least 1 (got {0})")]
    NoParts(i64),
    #[error("class size must be non-negative (got {0})")]
    NegativeClassSize(i64),
    #[error("K_{{{parts}x{class_size}}} has {count} vertices; at most {MAX_VERTICES} are supported")]
    TooLarge {
        parts: usize,
        class_size: usize,
        count: usize,
    },
}

/// The host graph `K_{j×t}`: `parts` classes of `class_size` vertices each.
#[derive(Clone, PartialEq, Eq)]
pub struct PartitionShape {
    parts: usize,
    class_size: usize,
    /// `first_edge[u]` is the id of edge `(u, first higher neighbour)`.
    first_edge: Vec<usize>,
    endpoints: Vec<(u8, u8)>,
}

/// Checked constructor taking signed inputs, as they arrive from files and flags.
pub fn build_shape(parts: i64, class_size: i64) -> Result<PartitionShape, ShapeError> {
    if parts <= 0 {
        return Err(ShapeError::NoParts(parts));
    }
    if class_size < 0 {
        return Err(ShapeError::NegativeClassSize(class_size));
    }
    PartitionShape::new(parts as usize, class_size as usize)
}

impl PartitionShape {
    pub fn new(parts: usize, class_size: usize) -> Result<Self, ShapeError> {
        if parts == 0 {
            return Err(ShapeError::NoParts(0));
        }
        let count = parts.saturating_mul(class_size);
        if count > MAX_VERTICES {
            return Err(ShapeError::TooLarge {
                parts,
                class_size,
                count,
            });
        }
        let mut first_edge = Vec::with_capacity(count);
        let mut endpoints = Vec::new();
        for u in 0..count {
            first_edge.push(endpoints.len());
            let above = (u / class_size + 1) * class_size;
            for v in above..count {
                endpoints.push((u as u8, v as u8));
            }
        }
        Ok(PartitionShape {
            parts,
            class_size,
            first_edge,
            endpoints,
        })
    }

    pub fn parts(&self) -> usize {
        self.parts
    }

    pub fn class_size(&self) -> usize {
        self.class_size
    }

    pub fn vertex_count(&self) -> usize {
        self.parts * self.class_size
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    /// Part containing vertex `v`.
    pub fn part_of(&self, v: usize) -> usize {
        debug_assert!(v < self.vertex_count());
        v / self.class_size
    }

    /// Vertex id of `slot` within `part`.
    pub fn vertex(&self, part: usize, slot: usize) -> usize {
        debug_assert!(part < self.parts && slot < self.class_size);
        part * self.class_size + slot
    }

    /// Endpoints `(u, v)`, `u < v`, of edge `e`.
    pub fn endpoints(&self, e: EdgeId) -> (usize, usize) {
        let (u, v) = self.endpoints[e];
        (u as usize, v as usize)
    }

    /// Edge id of the pair `{u, v}`, or `None` when it is not a host edge
    /// (same part, a loop, or out of range).
    pub fn id_of(&self, u: usize, v: usize) -> Option<EdgeId> {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        let n = self.vertex_count();
        if v >= n || u == v {
            return None;
        }
        let above = (self.part_of(u) + 1) * self.class_size;
        if v < above {
            return None;
        }
        Some(self.first_edge[u] + (v - above))
    }

    /// Iterates `(id, u, v)` over all host edges in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, usize, usize)> + '_ {
        self.endpoints
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| (e, u as usize, v as usize))
    }

    pub fn empty_set(&self) -> EdgeSet {
        EdgeSet::empty(self.edge_count())
    }

    pub fn full_set(&self) -> EdgeSet {
        EdgeSet::full(self.edge_count())
    }

    /// Edge set consisting of the given vertex pairs. Pairs that are not host
    /// edges are reported back as `Err((u, v))`.
    pub fn set_of_pairs<I>(&self, pairs: I) -> Result<EdgeSet, (usize, usize)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut s = self.empty_set();
        for (u, v) in pairs {
            let e = self.id_of(u, v).ok_or((u, v))?;
            s.insert(e);
        }
        Ok(s)
    }

    /// Host edges with both endpoints in `vertices` (a vertex mask).
    pub fn induced(&self, vertices: u128) -> EdgeSet {
        let mut s = self.empty_set();
        for (e, u, v) in self.edges() {
            if vertices >> u & 1 == 1 && vertices >> v & 1 == 1 {
                s.insert(e);
            }
        }
        s
    }
}

impl fmt::Debug for PartitionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{{{}x{}}}", self.parts, self.class_size)
    }
}

impl fmt::Display for PartitionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{{{}x{}}}", self.parts, self.class_size)
    }
}

/// Host-relative complement: host edges not in `s`. Never introduces
/// within-part pairs since the edge table has none.
pub fn complement_within(host: &PartitionShape, s: &EdgeSet) -> EdgeSet {
    debug_assert_eq!(s.universe(), host.edge_count());
    s.complement()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn choose2(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    #[test]
    fn counts_match_closed_form() {
        for (j, t, v, e) in [(3, 2, 6, 12), (2, 3, 6, 9), (4, 1, 4, 6)] {
            let s = PartitionShape::new(j, t).unwrap();
            assert_eq!(s.vertex_count(), v);
            assert_eq!(s.edge_count(), e);
            assert_eq!(e, choose2(j * t) - j * choose2(t));
        }
    }

    #[test]
    fn zero_class_size_is_empty() {
        let s = PartitionShape::new(5, 0).unwrap();
        assert_eq!(s.vertex_count(), 0);
        assert_eq!(s.edge_count(), 0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(build_shape(0, 3), Err(ShapeError::NoParts(0)));
        assert_eq!(build_shape(-2, 3), Err(ShapeError::NoParts(-2)));
        assert_eq!(build_shape(3, -1), Err(ShapeError::NegativeClassSize(-1)));
        assert!(matches!(
            build_shape(20, 7),
            Err(ShapeError::TooLarge { count: 140, .. })
        ));
    }

    #[test]
    fn id_of_rejects_non_edges() {
        let s = PartitionShape::new(3, 2).unwrap();
        assert_eq!(s.id_of(0, 1), None);
        assert_eq!(s.id_of(2, 2), None);
        assert_eq!(s.id_of(0, 6), None);
        assert_eq!(s.id_of(0, 2), Some(0));
        assert_eq!(s.id_of(5, 3), s.id_of(3, 5));
    }

    #[test]
    fn edges_are_lexicographic_and_cross_part() {
        let s = PartitionShape::new(4, 3).unwrap();
        let mut prev = None;
        for (e, u, v) in s.edges() {
            assert!(u < v);
            assert_ne!(s.part_of(u), s.part_of(v));
            assert_eq!(s.id_of(u, v), Some(e));
            if let Some(p) = prev {
                assert!(p < (u, v));
            }
            prev = Some((u, v));
        }
    }

    #[test]
    fn complement_examples() {
        let k33 = PartitionShape::new(2, 3).unwrap();
        assert_eq!(complement_within(&k33, &k33.empty_set()).len(), 9);
        assert!(complement_within(&k33, &k33.full_set()).is_empty());
        let k22 = PartitionShape::new(2, 2).unwrap();
        let one = k22.set_of_pairs([(0, 2)]).unwrap();
        let rest = complement_within(&k22, &one);
        assert_eq!(rest.len(), 3);
        assert!(!rest.contains(k22.id_of(0, 2).unwrap()));
    }
}
