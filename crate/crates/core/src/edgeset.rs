//! Membership bitmaps over the edge table of a fixed host.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::shape::EdgeId;

/// A subset of the host edges `[0, universe)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    words: Vec<u64>,
    universe: usize,
}

impl EdgeSet {
    pub fn empty(universe: usize) -> Self {
        EdgeSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = EdgeSet {
            words: vec![u64::MAX; universe.div_ceil(64)],
            universe,
        };
        s.trim();
        s
    }

    pub fn from_ids<I: IntoIterator<Item = EdgeId>>(universe: usize, ids: I) -> Self {
        let mut s = Self::empty(universe);
        for e in ids {
            s.insert(e);
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.universe % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Number of host edges this set ranges over.
    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, e: EdgeId) -> bool {
        assert!(e < self.universe, "edge {e} outside universe {}", self.universe);
        let (w, b) = (e / 64, e % 64);
        let fresh = self.words[w] >> b & 1 == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        if e >= self.universe {
            return false;
        }
        let (w, b) = (e / 64, e % 64);
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        had
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        e < self.universe && self.words[e / 64] >> (e % 64) & 1 == 1
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            core::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.universe, other.universe, "edge sets over different hosts");
        let mut s = EdgeSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            universe: self.universe,
        };
        s.trim();
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    /// Complement relative to the full host edge set.
    pub fn complement(&self) -> Self {
        let mut s = EdgeSet {
            words: self.words.iter().map(|w| !w).collect(),
            universe: self.universe,
        };
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.universe == other.universe
            && self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.universe == other.universe
            && self.words.iter().zip(&other.words).all(|(&a, &b)| a & b == 0)
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
