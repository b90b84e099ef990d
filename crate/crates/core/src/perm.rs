//! Permutations of `{1, ..., n}` and integer partitions used as cycle types.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// A permutation stored by its images: `images[i - 1]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotPermutation(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut used = vec![false; n + 1];
        for cycle in cycles {
            for (i, &v) in cycle.iter().enumerate() {
                if v == 0 || v > n || used[v] {
                    return Err(Error::NotPermutation(n));
                }
                used[v] = true;
                images[v - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// A fixed representative of the given cycle type, built from consecutive runs.
    pub fn with_cycle_type(cycle_type: &Partition) -> Self {
        let mut images = Vec::with_capacity(cycle_type.size());
        let mut start = 1;
        for &len in cycle_type.parts() {
            for i in 0..len {
                images.push(start + (i + 1) % len);
            }
            start += len;
        }
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v - 1]
    }

    pub fn apply_set(&self, s: VertexSet) -> VertexSet {
        s.iter().map(|v| self.apply(v)).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&v| self.apply(v)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    pub fn pow(&self, e: usize) -> Permutation {
        (0..e).fold(Permutation::identity(self.degree()), |acc, _| self.compose(&acc))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.apply(v);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(Vec::len).collect())
    }

    pub fn sign(&self) -> i64 {
        self.cycle_type().sign()
    }

    /// Disjoint sum: `other` acts on the points shifted by `self.degree()`.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let n = self.degree();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&v| v + n));
        Permutation { images }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return f.write_str("id");
        }
        for c in nontrivial {
            let body: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// An integer partition with parts in non-increasing order; zero parts are dropped.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// The hook `(k, 1^(n-k))`.
    pub fn hook(n: usize, k: usize) -> Self {
        assert!((1..=n).contains(&k), "hook arm out of range");
        let mut parts = vec![k];
        parts.extend(std::iter::repeat_n(1, n - k));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Sign of any permutation with this cycle type.
    pub fn sign(&self) -> i64 {
        let even_cycles = self.0.iter().filter(|&&p| p % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn concat(&self, other: &Partition) -> Partition {
        Partition::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    /// Size of the conjugacy class in the symmetric group.
    pub fn class_size(&self) -> u128 {
        let n = self.size();
        let mut denom: u128 = 1;
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let mult = self.0[i..].iter().take_while(|&&q| q == p).count();
            denom *= (p as u128).pow(mult as u32) * factorial(mult);
            i += mult;
        }
        factorial(n) / denom
    }

    /// All partitions of `n`, largest parts first.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Partition::new(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_first() {
        let rho = Permutation::from_images(vec![4, 3, 2, 1]).unwrap();
        let sigma = Permutation::from_cycles(4, &[vec![1, 2, 3, 4]]).unwrap();
        let tau = rho.compose(&sigma);
        assert_eq!(tau.images(), &[3, 2, 1, 4]);
        assert_eq!(tau.compose(&tau.inverse()), Permutation::identity(4));
    }

    #[test]
    fn cycle_type_and_sign() {
        let p = Permutation::from_cycles(6, &[vec![1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(p.cycle_type(), Partition::new(vec![3, 2, 1]));
        assert_eq!(p.sign(), -1);
        assert_eq!(
            Permutation::with_cycle_type(&p.cycle_type()).cycle_type(),
            p.cycle_type()
        );
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=8 {
            let total: u128 = Partition::all(n).iter().map(Partition::class_size).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_err());
    }
}
