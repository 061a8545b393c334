//! Fixed-universe bit sets over element ids.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::table::Element;

const WORD: usize = 64;

/// A subset of `{0, .., n-1}` stored as a little-endian array of words.
///
/// Sets over different universes never compare equal. Ordering treats the
/// words as one unsigned integer, so single-word sets order by their mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    words: SmallVec<[u64; 2]>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        let len = universe.div_ceil(WORD).max(1);
        ElementSet { universe, words: SmallVec::from_elem(0, len) }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for (i, word) in set.words.iter_mut().enumerate() {
            let lo = i * WORD;
            let remaining = universe.saturating_sub(lo);
            *word = if remaining >= WORD { u64::MAX } else { (1u64 << remaining) - 1 };
        }
        set
    }

    pub fn singleton(universe: usize, element: Element) -> Self {
        let mut set = Self::empty(universe);
        set.insert(element);
        set
    }

    pub fn from_elements<I: IntoIterator<Item = Element>>(universe: usize, elements: I) -> Self {
        let mut set = Self::empty(universe);
        for e in elements {
            set.insert(e);
        }
        set
    }

    /// Builds a set from a single-word mask. Panics if the universe exceeds 64.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD, "from_mask needs a universe of at most 64");
        let mut set = Self::empty(universe);
        set.words[0] = mask & Self::full(universe).words[0];
        set
    }

    /// The single-word mask, if the universe fits in one word.
    pub fn mask(&self) -> Option<u64> {
        (self.universe <= WORD).then(|| self.words[0])
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, element: Element) -> bool {
        element < self.universe && self.words[element / WORD] >> (element % WORD) & 1 == 1
    }

    /// Returns true if the element was not already present.
    #[inline]
    pub fn insert(&mut self, element: Element) -> bool {
        assert!(element < self.universe, "element {element} outside universe {}", self.universe);
        let word = &mut self.words[element / WORD];
        let bit = 1u64 << (element % WORD);
        let fresh = *word & bit == 0;
        *word |= bit;
        fresh
    }

    pub fn remove(&mut self, element: Element) -> bool {
        if element >= self.universe {
            return false;
        }
        let word = &mut self.words[element / WORD];
        let bit = 1u64 << (element % WORD);
        let present = *word & bit != 0;
        *word &= !bit;
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<Element> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, index: 0, current: self.words[0] }
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn complement(&self) -> ElementSet {
        let mut out = Self::full(self.universe);
        out.difference_with(self);
        out
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words.iter().rev().cmp(other.words.iter().rev()).then(self.universe.cmp(&other.universe))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = Element;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}
