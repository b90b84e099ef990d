//! Sets of graph vertices stored as 64-bit masks.
//!
//! Vertices are labelled `1..=n` with `n <= 64`; vertex `v` occupies bit `v - 1`.
//! The [`Ord`] instance compares the sorted member lists lexicographically,
//! so `{1,2,4} < {1,3} < {2}` and a prefix sorts before its extensions.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!((1..=MAX_VERTICES).contains(&v));
        VertexSet(1u64 << (v - 1))
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << (v - 1);
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << (v - 1));
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | (1u64 << (v - 1)))
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << (v - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement inside `{1, ..., n}`.
    pub fn complement(self, n: usize) -> Self {
        VertexSet(!self.0 & VertexSet::full(n).0)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Shift every member up by `offset`.
    pub fn shifted(self, offset: usize) -> Self {
        VertexSet(self.0 << offset)
    }

    /// Every subset, in no particular order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            set: self.0,
            next: Some(0),
        }
    }

    /// Position of `v` among the members (0-based), if present.
    pub fn rank_of(self, v: usize) -> Option<usize> {
        self.contains(v)
            .then(|| (self.0 & ((1u64 << (v - 1)) - 1)).count_ones() as usize)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(vs: [usize; N]) -> Self {
        vs.into_iter().collect()
    }
}

impl From<&[usize]> for VertexSet {
    fn from(vs: &[usize]) -> Self {
        vs.iter().copied().collect()
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Members;
    fn into_iter(self) -> Members {
        self.iter()
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }
    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

pub struct Subsets {
    set: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexSet;
    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        self.next = if cur == self.set {
            None
        } else {
            Some((cur.wrapping_sub(self.set)) & self.set)
        };
        Some(VertexSet(cur))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        // Everything below `low` is shared. Whoever owns `low` is smaller unless
        // the other list has already ended, in which case it is a prefix.
        let above = !((low << 1).wrapping_sub(1));
        if self.0 & low != 0 {
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let vs = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = vs.iter().find(|&&v| v == 0 || v > MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {bad} out of range")));
        }
        Ok(vs.into_iter().collect())
    }
}

/// All `k`-subsets of `{1, ..., n}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    KSubsets {
        n,
        idx: if k <= n { Some((1..=k).collect()) } else { None },
    }
}

pub struct KSubsets {
    n: usize,
    idx: Option<Vec<usize>>,
}

impl Iterator for KSubsets {
    type Item = VertexSet;
    fn next(&mut self) -> Option<VertexSet> {
        let idx = self.idx.as_mut()?;
        let out: VertexSet = idx.iter().copied().collect();
        let k = idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.idx = None;
                break;
            }
            i -= 1;
            if idx[i] < self.n - (k - 1 - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// All `k`-subsets of `set`, in lexicographic order.
pub fn k_subsets_of(set: VertexSet, k: usize) -> impl Iterator<Item = VertexSet> {
    let members = set.to_vec();
    k_subsets(members.len(), k).map(move |pos| pos.iter().map(|i| members[i - 1]).collect())
}
