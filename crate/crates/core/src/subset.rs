//! Fixed-universe index sets backed by a bit vector.
//!
//! An [`IndexSubset`] holds a set of zero-based indices drawn from a declared
//! ground set `{0, .., universe-1}`. All set operations are exact and cheap
//! word-parallel bit operations, which keeps the exhaustive verification
//! scans fast.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(universe: usize) -> usize {
    universe.div_ceil(WORD_BITS)
}

/// A subset of `{0, .., universe-1}` stored as a bit vector.
///
/// The `Ord` implementation compares the characteristic vectors as integers
/// (highest bit first). For subsets of equal cardinality this is exactly
/// colexicographic order, which is the canonical order used throughout the
/// crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndexSubset {
    universe: usize,
    words: Vec<u64>,
}

impl IndexSubset {
    /// The empty subset of a ground set of the given size.
    pub fn empty(universe: usize) -> Self {
        IndexSubset {
            universe,
            words: vec![0; words_for(universe)],
        }
    }

    /// The full ground set.
    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for w in 0..words_for(universe) {
            s.words[w] = u64::MAX;
        }
        s.clear_tail();
        s
    }

    /// Builds a subset from explicit elements, rejecting out-of-range indices.
    pub fn from_elements(
        universe: usize,
        elements: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut s = Self::empty(universe);
        for e in elements {
            s.insert(e)?;
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Number of elements (exact popcount).
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.universe && self.words[index / WORD_BITS] >> (index % WORD_BITS) & 1 == 1
    }

    pub fn insert(&mut self, index: usize) -> Result<()> {
        if index >= self.universe {
            return Err(Error::domain(format!(
                "index {index} outside ground set of size {}",
                self.universe
            )));
        }
        self.words[index / WORD_BITS] |= 1 << (index % WORD_BITS);
        Ok(())
    }

    pub fn remove(&mut self, index: usize) {
        if index < self.universe {
            self.words[index / WORD_BITS] &= !(1 << (index % WORD_BITS));
        }
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * WORD_BITS + b)
            })
        })
    }

    pub fn elements(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn difference_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn complement(&self) -> Self {
        let mut s = self.clone();
        for w in &mut s.words {
            *w = !*w;
        }
        s.clear_tail();
        s
    }

    /// `|self \ other|` without materializing the difference.
    pub fn difference_len(&self, other: &Self) -> usize {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & !b).count_ones() as usize)
            .sum()
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_tail(&mut self) {
        let extra = words_for(self.universe) * WORD_BITS - self.universe;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }

    fn check_universe(&self, other: &Self) {
        assert_eq!(
            self.universe, other.universe,
            "set operation across different ground sets"
        );
    }
}

impl Ord for IndexSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.universe.cmp(&other.universe)
    }
}

impl PartialOrd for IndexSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}
