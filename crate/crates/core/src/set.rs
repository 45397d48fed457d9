//! Membership masks over the element indices of a group.

use std::cmp::Ordering;
use std::fmt;

/// A set of element indices drawn from `0..universe`.
///
/// Subgroups, normal subgroups, cores, socles and Frattini subgroups are all
/// carried as `ElementSet`s of the group that owns them.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Vec<u64>,
    universe: usize,
    size: usize,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
            size: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for w in s.words.iter_mut() {
            *w = !0;
        }
        if universe % 64 != 0 {
            if let Some(last) = s.words.last_mut() {
                *last = (1u64 << (universe % 64)) - 1;
            }
        }
        s.size = universe;
        s
    }

    pub fn singleton(universe: usize, x: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(x);
        s
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(universe: usize, elems: I) -> Self {
        let mut s = Self::empty(universe);
        for x in elems {
            s.insert(x);
        }
        s
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && self.words[x >> 6] & (1u64 << (x & 63)) != 0
    }

    /// Inserts `x`, returning true when it was not already present.
    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < self.universe, "element {x} outside universe {}", self.universe);
        let w = &mut self.words[x >> 6];
        let bit = 1u64 << (x & 63);
        if *w & bit == 0 {
            *w |= bit;
            self.size += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, x: usize) -> bool {
        if !self.contains(x) {
            return false;
        }
        self.words[x >> 6] &= !(1u64 << (x & 63));
        self.size -= 1;
        true
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min_element(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.size <= other.size && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        Self::from_words(words, self.universe)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        Self::from_words(words, self.universe)
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        self.size = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    fn from_words(words: Vec<u64>, universe: usize) -> ElementSet {
        let size = words.iter().map(|w| w.count_ones() as usize).sum();
        ElementSet { words, universe, size }
    }

    /// Canonical order used to sort lattices: by size, then by the sorted element lists.
    pub fn canonical_cmp(&self, other: &ElementSet) -> Ordering {
        self.size.cmp(&other.size).then_with(|| self.lex_cmp(other))
    }

    /// Lexicographic comparison of the sorted element lists.
    pub fn lex_cmp(&self, other: &ElementSet) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            if a != b {
                // The lowest differing bit decides: whoever owns it lists that element first.
                let diff = a ^ b;
                let bit = diff & diff.wrapping_neg();
                return if a & bit != 0 { Ordering::Less } else { Ordering::Greater };
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementSet(size={}, ", self.size)?;
        f.debug_set().entries(self.iter().take(32)).finish()?;
        if self.size > 32 {
            write!(f, "...")?;
        }
        write!(f, ")")
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word_index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_index += 1;
            if self.word_index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_index];
        }
        let tz = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_index * 64 + tz)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_empty() {
        let f = ElementSet::full(70);
        assert_eq!(f.size(), 70);
        assert!(f.contains(69));
        assert!(!f.contains(70));
        assert_eq!(ElementSet::empty(70).iter().count(), 0);
    }

    #[test]
    fn lex_order_compares_sorted_lists() {
        let a = ElementSet::from_elements(10, [0, 3, 4]);
        let b = ElementSet::from_elements(10, [0, 2, 9]);
        assert_eq!(a.lex_cmp(&b), Ordering::Greater);
        assert_eq!(b.lex_cmp(&a), Ordering::Less);
        assert_eq!(a.canonical_cmp(&a), Ordering::Equal);
    }

    proptest! {
        #[test]
        fn size_matches_iteration(elems in proptest::collection::vec(0usize..200, 0..80)) {
            let s = ElementSet::from_elements(200, elems.iter().copied());
            let mut sorted = elems.clone();
            sorted.sort_unstable();
            sorted.dedup();
            prop_assert_eq!(s.size(), sorted.len());
            prop_assert_eq!(s.to_vec(), sorted);
        }

        #[test]
        fn intersection_is_subset(a in proptest::collection::vec(0usize..130, 0..60),
                                  b in proptest::collection::vec(0usize..130, 0..60)) {
            let a = ElementSet::from_elements(130, a);
            let b = ElementSet::from_elements(130, b);
            let i = a.intersection(&b);
            prop_assert!(i.is_subset(&a) && i.is_subset(&b));
            prop_assert!(a.is_subset(&a.union(&b)));
        }
    }
}
