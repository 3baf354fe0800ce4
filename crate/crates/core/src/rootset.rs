//! Fixed-capacity bitset over root ids.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Largest number of positive roots a [`RootSet`] can hold.
pub const MAX_ROOTS: usize = 256;

const WORDS: usize = MAX_ROOTS / 64;

/// A set of positive-root ids, stored as a 256-bit mask.
///
/// Serializes as a sorted list of ids.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSet([u64; WORDS]);

impl RootSet {
    pub const EMPTY: RootSet = RootSet([0; WORDS]);

    pub fn new() -> Self {
        Self::EMPTY
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ROOTS);
        let mut s = Self::EMPTY;
        for w in 0..WORDS {
            let lo = w * 64;
            if n >= lo + 64 {
                s.0[w] = u64::MAX;
            } else if n > lo {
                s.0[w] = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    /// The set `{lo, .., hi-1}`.
    pub fn range(lo: usize, hi: usize) -> Self {
        Self::full(hi).difference(&Self::full(lo))
    }

    pub fn singleton(i: usize) -> Self {
        let mut s = Self::EMPTY;
        s.insert(i);
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i >> 6, i & 63);
        let had = self.0[w] >> b & 1 == 1;
        self.0[w] |= 1 << b;
        !had
    }

    #[inline]
    pub fn remove(&mut self, i: usize) -> bool {
        let (w, b) = (i >> 6, i & 63);
        let had = self.0[w] >> b & 1 == 1;
        self.0[w] &= !(1 << b);
        had
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < MAX_ROOTS && self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn union(&self, other: &Self) -> Self {
        let mut out = *self;
        for w in 0..WORDS {
            out.0[w] |= other.0[w];
        }
        out
    }

    #[inline]
    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = *self;
        for w in 0..WORDS {
            out.0[w] &= other.0[w];
        }
        out
    }

    #[inline]
    pub fn difference(&self, other: &Self) -> Self {
        let mut out = *self;
        for w in 0..WORDS {
            out.0[w] &= !other.0[w];
        }
        out
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        (0..WORDS).all(|w| self.0[w] & !other.0[w] == 0)
    }

    #[inline]
    pub fn is_disjoint(&self, other: &Self) -> bool {
        (0..WORDS).all(|w| self.0[w] & other.0[w] == 0)
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        for w in 0..WORDS {
            if self.0[w] != 0 {
                return Some(w * 64 + self.0[w].trailing_zeros() as usize);
            }
        }
        None
    }

    /// Largest member, if any.
    pub fn last(&self) -> Option<usize> {
        for w in (0..WORDS).rev() {
            if self.0[w] != 0 {
                return Some(w * 64 + 63 - self.0[w].leading_zeros() as usize);
            }
        }
        None
    }

    /// Members shifted down by `k` (members below `k` are dropped).
    pub fn shr(&self, k: usize) -> Self {
        let mut out = Self::EMPTY;
        let (ws, bs) = (k >> 6, k & 63);
        for w in 0..WORDS {
            let src = w + ws;
            if src >= WORDS {
                break;
            }
            let mut v = self.0[src] >> bs;
            if bs != 0 && src + 1 < WORDS {
                v |= self.0[src + 1] << (64 - bs);
            }
            out.0[w] = v;
        }
        out
    }

    /// Members shifted up by `k` (members pushed past capacity are dropped).
    pub fn shl(&self, k: usize) -> Self {
        let mut out = Self::EMPTY;
        let (ws, bs) = (k >> 6, k & 63);
        for w in (0..WORDS).rev() {
            if w < ws {
                break;
            }
            let src = w - ws;
            let mut v = self.0[src] << bs;
            if bs != 0 && src >= 1 {
                v |= self.0[src - 1] >> (64 - bs);
            }
            out.0[w] = v;
        }
        out
    }

    pub fn iter(&self) -> Iter {
        Iter {
            words: self.0,
            word: 0,
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Ascending iterator over a [`RootSet`].
pub struct Iter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let b = w.trailing_zeros() as usize;
                self.words[self.word] = w & (w - 1);
                return Some(self.word * 64 + b);
            }
            self.word += 1;
        }
        None
    }
}

impl IntoIterator for RootSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl IntoIterator for &RootSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for RootSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl Extend<usize> for RootSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for i in iter {
            self.insert(i);
        }
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for RootSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for RootSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let ids = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = ids.iter().find(|&&i| i >= MAX_ROOTS) {
            return Err(serde::de::Error::custom(format!(
                "root id {bad} out of range"
            )));
        }
        Ok(ids.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shifts_cross_word_boundaries() {
        let s: RootSet = [0, 63, 64, 130].into_iter().collect();
        assert_eq!(s.shl(1).to_vec(), vec![1, 64, 65, 131]);
        assert_eq!(s.shl(70).to_vec(), vec![70, 133, 134, 200]);
        assert_eq!(s.shr(63).to_vec(), vec![0, 1, 67]);
        assert_eq!(s.shl(200).shr(200).to_vec(), vec![0]);
    }

    #[test]
    fn full_and_range() {
        assert_eq!(RootSet::full(0).len(), 0);
        assert_eq!(RootSet::full(64).len(), 64);
        assert_eq!(RootSet::full(256).len(), 256);
        assert_eq!(RootSet::range(60, 70).to_vec(), (60..70).collect::<Vec<_>>());
        assert_eq!(RootSet::range(3, 9).first(), Some(3));
        assert_eq!(RootSet::range(3, 9).last(), Some(8));
    }

    #[test]
    fn json_roundtrip() {
        let s: RootSet = [5, 2, 77].into_iter().collect();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, "[2,5,77]");
        assert_eq!(serde_json::from_str::<RootSet>(&j).unwrap(), s);
        assert!(serde_json::from_str::<RootSet>("[300]").is_err());
    }
}
