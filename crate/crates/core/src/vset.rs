//! Sets of vertex indices, stored as bit words.

use std::cmp::Ordering;
use std::fmt;

/// A set of vertex indices. Trailing zero words are trimmed so that equal
/// sets compare and hash equal regardless of how they were built.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(i: usize) -> Self {
        let mut s = Self::new();
        s.insert(i);
        s
    }

    /// `{0, 1, ..., n-1}`
    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    pub fn insert(&mut self, i: usize) {
        let (w, b) = (i / 64, i % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, i: usize) {
        let (w, b) = (i / 64, i % 64);
        if w < self.words.len() {
            self.words[w] &= !(1 << b);
            self.trim();
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        self.words.get(w).is_some_and(|x| x & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.len() <= other.words.len()
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_proper_subset(&self, other: &VertexSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        while words.last() == Some(&0) {
            words.pop();
        }
        VertexSet { words }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        VertexSet { words }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        out.trim();
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Applies an index map; `map[i]` is the new index of vertex `i`.
    pub fn map(&self, map: &[usize]) -> VertexSet {
        self.iter().map(|i| map[i]).collect()
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl From<&[usize]> for VertexSet {
    fn from(v: &[usize]) -> Self {
        v.iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.iter().collect()
    }
}

/// Lexicographic order on the sorted index lists.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let a = VertexSet::from([1, 3, 70]);
        let b = VertexSet::from([3, 70, 5]);
        assert_eq!(a.intersection(&b), VertexSet::from([3, 70]));
        assert_eq!(a.union(&b).to_vec(), vec![1, 3, 5, 70]);
        assert!(VertexSet::from([3]).is_proper_subset(&a));
        assert_eq!(a.difference(&b), VertexSet::from([1]));
        assert_eq!(a.len(), 3);
        assert_eq!(a.intersection(&VertexSet::from([100])), VertexSet::new());
    }

    proptest! {
        #[test]
        fn matches_btreeset(xs in proptest::collection::btree_set(0usize..200, 0..30),
                            ys in proptest::collection::btree_set(0usize..200, 0..30)) {
            let a: VertexSet = xs.iter().collect();
            let b: VertexSet = ys.iter().collect();
            let inter: Vec<usize> = xs.intersection(&ys).copied().collect();
            prop_assert_eq!(a.intersection(&b).to_vec(), inter);
            prop_assert_eq!(a.is_subset(&b), xs.is_subset(&ys));
            prop_assert_eq!(a.to_vec(), xs.iter().copied().collect::<Vec<_>>());
            let sorted: Vec<usize> = xs.iter().copied().collect();
            let other: Vec<usize> = ys.iter().copied().collect();
            prop_assert_eq!(a.cmp(&b), sorted.cmp(&other));
        }
    }
}
