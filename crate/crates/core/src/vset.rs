//! Fixed-universe vertex sets backed by `u64` blocks.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A set of vertices over a fixed universe `0..universe`.
///
/// The backing storage is an array of 64-bit blocks sized to the universe at
/// construction; the cardinality is cached and kept in sync by every mutation.
#[derive(Clone)]
pub struct VertexSet {
    universe: usize,
    bits: Vec<u64>,
    card: u32,
}

#[inline]
fn word_count(universe: usize) -> usize {
    universe.div_ceil(64)
}

impl VertexSet {
    /// The empty set over `0..universe`.
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            bits: vec![0; word_count(universe)],
            card: 0,
        }
    }

    /// The full set `{0, …, universe-1}`.
    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    /// Builds a set from vertex indices, rejecting out-of-range ones.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, iter: I) -> Result<Self> {
        let mut s = Self::empty(universe);
        for v in iter {
            if v >= universe {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    universe,
                });
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// The singleton `{v}`.
    pub fn singleton(universe: usize, v: usize) -> Result<Self> {
        Self::from_indices(universe, [v])
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Number of vertices in the set.
    #[inline]
    pub fn cardinality(&self) -> usize {
        self.card as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        debug_assert!(v < self.universe);
        (self.bits[v / 64] >> (v % 64)) & 1 == 1
    }

    /// Inserts `v`; no-op if already present.
    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(
            v < self.universe,
            "vertex {v} out of universe {}",
            self.universe
        );
        let w = &mut self.bits[v / 64];
        let mask = 1u64 << (v % 64);
        if *w & mask == 0 {
            *w |= mask;
            self.card += 1;
        }
    }

    /// Removes `v`; no-op if absent.
    #[inline]
    pub fn remove(&mut self, v: usize) {
        assert!(
            v < self.universe,
            "vertex {v} out of universe {}",
            self.universe
        );
        let w = &mut self.bits[v / 64];
        let mask = 1u64 << (v % 64);
        if *w & mask != 0 {
            *w &= !mask;
            self.card -= 1;
        }
    }

    /// Copy with `v` inserted.
    pub fn with(&self, v: usize) -> Self {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    /// Copy with `v` removed.
    pub fn without(&self, v: usize) -> Self {
        let mut s = self.clone();
        s.remove(v);
        s
    }

    /// Ascending iterator over member indices.
    pub fn iter(&self) -> Indices<'_> {
        Indices {
            bits: &self.bits,
            word: 0,
            current: self.bits.first().copied().unwrap_or(0),
        }
    }

    /// Members as an ascending `Vec`.
    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lowest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    #[inline]
    fn assert_same_universe(&self, other: &Self) {
        debug_assert_eq!(
            self.universe, other.universe,
            "set operation across different universes"
        );
    }

    /// `|self ∩ other|`.
    pub fn intersection_size(&self, other: &Self) -> usize {
        self.assert_same_universe(other);
        self.bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.assert_same_universe(other);
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        !self.is_disjoint(other)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.assert_same_universe(other);
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.assert_same_universe(other);
        let bits: Vec<u64> = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a & b)
            .collect();
        Self::from_words(self.universe, bits)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.assert_same_universe(other);
        let bits: Vec<u64> = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a | b)
            .collect();
        Self::from_words(self.universe, bits)
    }

    /// `self ∖ other`.
    pub fn difference(&self, other: &Self) -> Self {
        self.assert_same_universe(other);
        let bits: Vec<u64> = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a & !b)
            .collect();
        Self::from_words(self.universe, bits)
    }

    fn from_words(universe: usize, bits: Vec<u64>) -> Self {
        let card = bits.iter().map(|w| w.count_ones()).sum();
        VertexSet {
            universe,
            bits,
            card,
        }
    }

    /// Raw blocks, low word first.
    pub fn words(&self) -> &[u64] {
        &self.bits
    }
}

/// Iterator over set members in ascending index order.
pub struct Indices<'a> {
    bits: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Indices<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word += 1;
            if self.word >= self.bits.len() {
                return None;
            }
            self.current = self.bits[self.word];
        }
        let tz = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word * 64 + tz)
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.bits == other.bits
    }
}

impl Eq for VertexSet {}

impl std::hash::Hash for VertexSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.universe.hash(state);
        self.bits.hash(state);
    }
}

// Canonical order: lexicographic on the ascending index sequence, so {0,5}
// precedes {1,2}. Universe breaks the (degenerate) cross-universe tie.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter()
            .cmp(other.iter())
            .then(self.universe.cmp(&other.universe))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinality_tracks_mutations() {
        let mut s = VertexSet::empty(130);
        assert_eq!(s.cardinality(), 0);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        s.insert(64); // duplicate
        assert_eq!(s.cardinality(), 3);
        s.remove(64);
        s.remove(64);
        assert_eq!(s.cardinality(), 2);
        assert_eq!(s.to_vec(), vec![0, 129]);
    }

    #[test]
    fn from_indices_rejects_out_of_range() {
        let err = VertexSet::from_indices(4, [0, 4]).unwrap_err();
        assert_eq!(
            err,
            Error::VertexOutOfRange {
                vertex: 4,
                universe: 4
            }
        );
    }

    #[test]
    fn set_algebra() {
        let a = VertexSet::from_indices(10, [0, 2, 5]).unwrap();
        let b = VertexSet::from_indices(10, [2, 5, 7]).unwrap();
        assert_eq!(a.intersection(&b).to_vec(), vec![2, 5]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 2, 5, 7]);
        assert_eq!(a.difference(&b).to_vec(), vec![0]);
        assert_eq!(a.intersection_size(&b), 2);
        assert!(!a.is_disjoint(&b));
        assert!(a.intersection(&b).is_subset_of(&a));
        let c = VertexSet::from_indices(10, [1, 3]).unwrap();
        assert!(a.is_disjoint(&c));
    }

    #[test]
    fn order_is_lexicographic_on_indices() {
        let u = 8;
        let s = |ix: &[usize]| VertexSet::from_indices(u, ix.iter().copied()).unwrap();
        assert!(s(&[0, 5]) < s(&[1, 2]));
        assert!(s(&[0, 2]) < s(&[0, 5]));
        assert!(s(&[0]) < s(&[0, 2]));
        assert_eq!(s(&[3, 1]), s(&[1, 3]));
    }

    #[test]
    fn iter_crosses_word_boundaries() {
        let s = VertexSet::from_indices(200, [63, 64, 127, 128, 199]).unwrap();
        assert_eq!(s.to_vec(), vec![63, 64, 127, 128, 199]);
    }

    #[test]
    fn full_and_complement() {
        let full = VertexSet::full(70);
        assert_eq!(full.cardinality(), 70);
        let a = VertexSet::from_indices(70, [0, 69]).unwrap();
        let comp = full.difference(&a);
        assert_eq!(comp.cardinality(), 68);
        assert!(comp.is_disjoint(&a));
    }
}
