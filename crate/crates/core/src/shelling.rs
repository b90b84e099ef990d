//! Shelling orders: verification with restriction certificates, bounded search,
//! and the explicit order for cut complexes of squared paths.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::complex::{cut_complex, Complex};
use crate::error::{invalid, Error, Result};
use crate::graph::{make_family, Family};
use crate::vertex_set::{k_subsets, VertexSet};

/// A verified shelling order together with its restriction data.
///
/// The restriction of a facet is the unique minimal face it adds to the
/// union of the earlier facets. Facets whose restriction is the whole facet
/// each contribute one sphere to the homotopy type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingCertificate {
    pub order: Vec<VertexSet>,
    pub restrictions: Vec<VertexSet>,
    pub full_restriction_count: usize,
}

impl ShellingCertificate {
    /// Facets whose restriction is the entire facet.
    pub fn full_restriction_facets(&self) -> Vec<VertexSet> {
        self.order
            .iter()
            .zip(&self.restrictions)
            .filter(|(f, r)| f == r)
            .map(|(f, _)| *f)
            .collect()
    }

    /// h-vector read off the restriction sizes: `h_i = #{j : |r(F_j)| = i}`.
    pub fn h_vector(&self) -> Vec<i64> {
        let d = self.order.first().map_or(0, |f| f.len());
        let mut h = vec![0i64; d + 1];
        for r in &self.restrictions {
            h[r.len()] += 1;
        }
        h
    }
}

/// h-vector of a shellable complex computed from a certificate.
pub fn h_from_certificate(cert: &ShellingCertificate) -> Vec<i64> {
    cert.h_vector()
}

/// Restriction of `facet` relative to the `earlier` facets (all of the same size).
fn restriction(facet: VertexSet, earlier: impl Iterator<Item = VertexSet>) -> VertexSet {
    let mut r = VertexSet::EMPTY;
    for h in earlier {
        let missing = facet.difference(h);
        if missing.len() == 1 {
            r = r.union(missing);
        }
    }
    r
}

/// Check that `order` is a shelling of `complex` and build its certificate.
///
/// Besides the pairwise exchange condition this asserts that each restriction
/// is genuinely new and that the intervals `[r(F), F]` partition the faces.
pub fn verify_shelling(complex: &Complex, order: &[VertexSet]) -> Result<ShellingCertificate> {
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != complex.facets() {
        return Err(Error::NotFacetPermutation);
    }
    let mut restrictions = Vec::with_capacity(order.len());
    for (j, &fj) in order.iter().enumerate() {
        let r = restriction(fj, order[..j].iter().copied());
        for (i, &fi) in order[..j].iter().enumerate() {
            if fj.difference(fi).intersection(r).is_empty() {
                return Err(Error::ShellingViolation { i, j });
            }
        }
        if order[..j].iter().any(|&h| r.is_subset(h)) {
            return Err(Error::RestrictionNotNew(j));
        }
        restrictions.push(r);
    }
    let covered: u64 = order
        .iter()
        .zip(&restrictions)
        .map(|(f, r)| 1u64 << (f.len() - r.len()))
        .sum();
    let total = complex.faces()?.total() as u64;
    if covered != total {
        return Err(Error::IntervalPartition { covered, total });
    }
    let full_restriction_count = order.iter().zip(&restrictions).filter(|(f, r)| f == r).count();
    Ok(ShellingCertificate {
        order: order.to_vec(),
        restrictions,
        full_restriction_count,
    })
}

/// Limits for [`find_shelling`].
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    /// Complexes with more facets are reported undecided without searching.
    pub max_facets: usize,
    /// Search nodes to expand before giving up.
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_facets: 25,
            max_nodes: 2_000_000,
        }
    }
}

/// Outcome of a shelling search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ShellingSearch {
    Found {
        certificate: ShellingCertificate,
        nodes: u64,
    },
    NotShellable {
        nodes: u64,
    },
    Undecided {
        nodes: u64,
        reason: String,
    },
}

impl ShellingSearch {
    pub fn certificate(&self) -> Option<&ShellingCertificate> {
        match self {
            ShellingSearch::Found { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, ShellingSearch::Found { .. })
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, ShellingSearch::Undecided { .. })
    }
}

/// Backtracking search for a shelling order.
///
/// Whether a facet may come next depends only on the set of facets already
/// placed, so failed sets are memoised. Facets start in descending
/// lexicographic order of their complements, and at each step candidates that
/// add the smallest new face are tried first.
pub fn find_shelling(complex: &Complex, limits: SearchLimits) -> Result<ShellingSearch> {
    if complex.is_void() {
        return Err(Error::VoidComplex);
    }
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    let t = complex.facet_count();
    if t > limits.max_facets {
        return Ok(ShellingSearch::Undecided {
            nodes: 0,
            reason: format!("{t} facets exceed the bound of {}", limits.max_facets),
        });
    }
    let n = complex.universe_size();
    let mut facets = complex.facets().to_vec();
    facets.sort_by_key(|f| std::cmp::Reverse(f.complement(n)));
    let mut search = Search {
        facets,
        placed: vec![0u64; t.div_ceil(64)],
        order: Vec::with_capacity(t),
        failed: HashSet::new(),
        nodes: 0,
        max_nodes: limits.max_nodes,
    };
    match search.extend() {
        Some(true) => {
            let order: Vec<VertexSet> = search.order.iter().map(|&i| search.facets[i]).collect();
            let certificate = verify_shelling(complex, &order)?;
            Ok(ShellingSearch::Found {
                certificate,
                nodes: search.nodes,
            })
        }
        Some(false) => Ok(ShellingSearch::NotShellable { nodes: search.nodes }),
        None => Ok(ShellingSearch::Undecided {
            nodes: search.nodes,
            reason: format!("node budget of {} exhausted", limits.max_nodes),
        }),
    }
}

struct Search {
    facets: Vec<VertexSet>,
    placed: Vec<u64>,
    order: Vec<usize>,
    failed: HashSet<Vec<u64>>,
    nodes: u64,
    max_nodes: u64,
}

impl Search {
    fn is_placed(&self, i: usize) -> bool {
        self.placed[i / 64] >> (i % 64) & 1 == 1
    }

    fn toggle(&mut self, i: usize) {
        self.placed[i / 64] ^= 1 << (i % 64);
    }

    /// Restriction size if facet `i` can come next, else `None`.
    fn admissible(&self, i: usize) -> Option<usize> {
        let f = self.facets[i];
        let r = restriction(f, self.order.iter().map(|&p| self.facets[p]));
        self.order
            .iter()
            .all(|&p| !f.difference(self.facets[p]).intersection(r).is_empty())
            .then_some(r.len())
    }

    /// `Some(true)` when a full order was found, `Some(false)` when this branch
    /// is exhausted, `None` when the node budget ran out.
    fn extend(&mut self) -> Option<bool> {
        if self.order.len() == self.facets.len() {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return None;
        }
        if self.failed.contains(&self.placed) {
            return Some(false);
        }
        let mut candidates: Vec<(usize, usize)> = (0..self.facets.len())
            .filter(|&i| !self.is_placed(i))
            .filter_map(|i| self.admissible(i).map(|r| (r, i)))
            .collect();
        candidates.sort_unstable();
        for (_, i) in candidates {
            self.toggle(i);
            self.order.push(i);
            match self.extend() {
                Some(false) => {}
                other => return other,
            }
            self.order.pop();
            self.toggle(i);
        }
        self.failed.insert(self.placed.clone());
        Some(false)
    }
}

/// Facets of the `k`-cut complex of the squared path on `n` vertices, from
/// their combinatorial description rather than from connectivity.
///
/// These are the `(n-k)`-sets `F` containing a pair `{i, i+1}` with
/// `2 <= i <= n-2`, `i-1 ∉ F`, and some `j >= i+2` outside `F`.
pub fn squared_path_facets(n: usize, k: usize) -> Result<Vec<VertexSet>> {
    if k < 2 || k + 2 > n {
        return Err(invalid(format!("need 2 <= k <= n-2, got n={n}, k={k}")));
    }
    Ok(k_subsets(n, n - k)
        .filter(|&f| {
            (2..=n - 2).any(|i| {
                f.contains(i) && f.contains(i + 1) && !f.contains(i - 1) && (i + 2..=n).any(|j| !f.contains(j))
            })
        })
        .collect())
}

/// The explicit shelling of the `k`-cut complex of the squared path on `n` vertices.
///
/// Facets are grouped by the smallest `i` with `i ∉ F` and `i+1, i+2 ∈ F`;
/// groups are taken in increasing `i`, and each group in lexicographic order.
pub fn squared_path_shelling(n: usize, k: usize) -> Result<ShellingCertificate> {
    if k < 2 || n < k + 3 {
        return Err(invalid(format!("need k >= 2 and n >= k+3, got n={n}, k={k}")));
    }
    let complex = cut_complex(&make_family(&Family::SquaredPath(n))?, k)?;
    let group = |f: VertexSet| (1..=n - 2).find(|&i| !f.contains(i) && f.contains(i + 1) && f.contains(i + 2));
    let mut keyed = Vec::with_capacity(complex.facet_count());
    for &f in complex.facets() {
        let g = group(f).ok_or_else(|| invalid(format!("facet {f} has no group")))?;
        keyed.push((g, f));
    }
    keyed.sort_unstable();
    let order: Vec<VertexSet> = keyed.into_iter().map(|(_, f)| f).collect();
    verify_shelling(&complex, &order)
}

/// A second shelling of the 3-cut complex of the squared path, built by
/// peeling off the last vertex.
///
/// With `S = {n-2, n-1}`, facets containing `S` and not `n` come first, then
/// facets meeting `S` in one vertex and missing `n`, both lexicographically,
/// then the facets containing `n` in the order for `n - 1` vertices.
/// Its full-restriction facets are the complements of `{b, j-2, j}` with
/// `1 <= b <= j-5` and `6 <= j <= n`.
pub fn squared_path_wedge_shelling(n: usize) -> Result<ShellingCertificate> {
    if n < 5 {
        return Err(invalid(format!("need n >= 5, got {n}")));
    }
    let complex = cut_complex(&make_family(&Family::SquaredPath(n))?, 3)?;
    let order = wedge_order(n);
    verify_shelling(&complex, &order)
}

fn wedge_order(n: usize) -> Vec<VertexSet> {
    let facets = cut_complex(&make_family(&Family::SquaredPath(n)).unwrap(), 3).unwrap();
    if n == 5 {
        return facets.facets().to_vec();
    }
    let s = VertexSet::from([n - 2, n - 1]);
    let (mut first, mut second): (Vec<VertexSet>, Vec<VertexSet>) = facets
        .facets()
        .iter()
        .filter(|f| !f.contains(n))
        .partition(|f| s.is_subset(**f));
    first.sort_unstable();
    second.sort_unstable();
    first.extend(second);
    first.extend(wedge_order(n - 1).into_iter().map(|f| f.with(n)));
    first
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::homology::homology_profile;
    use crate::poly::binomial;

    fn cut(descriptor: &str, k: usize) -> Complex {
        cut_complex(&make_family(&descriptor.parse().unwrap()).unwrap(), k).unwrap()
    }

    #[test]
    fn single_facet_and_errors() {
        let c = Complex::simplex(3);
        let cert = verify_shelling(&c, c.facets()).unwrap();
        assert_eq!(cert.restrictions, vec![VertexSet::EMPTY]);
        assert_eq!(cert.full_restriction_count, 0);
        let nonpure = Complex::from_facets(3, [VertexSet::from([1, 2]), VertexSet::from([3])]).unwrap();
        assert!(matches!(
            verify_shelling(&nonpure, nonpure.facets()),
            Err(Error::NotPure)
        ));
        let c5 = cut("cycle:5", 2);
        assert!(matches!(
            verify_shelling(&c5, &c5.facets()[1..]),
            Err(Error::NotFacetPermutation)
        ));
    }

    #[test]
    fn two_disjoint_edges_do_not_shell() {
        let c = Complex::from_facets(4, [VertexSet::from([1, 3]), VertexSet::from([2, 4])]).unwrap();
        assert!(matches!(
            verify_shelling(&c, c.facets()),
            Err(Error::ShellingViolation { i: 0, j: 1 })
        ));
        assert!(matches!(
            find_shelling(&c, SearchLimits::default()).unwrap(),
            ShellingSearch::NotShellable { .. }
        ));
    }

    #[test]
    fn mobius_strip_is_not_shellable() {
        let c = cut("cycle:5", 2);
        assert!(matches!(
            find_shelling(&c, SearchLimits::default()).unwrap(),
            ShellingSearch::NotShellable { .. }
        ));
    }

    #[test]
    fn bound_reports_undecided() {
        let c = cut("grid:2x4", 3);
        let out = find_shelling(
            &c,
            SearchLimits {
                max_facets: 5,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(out.is_undecided());
    }

    #[test]
    fn grid_delta3_shells_with_matching_betti() {
        let c = cut("grid:2x3", 3);
        let cert = find_shelling(&c, SearchLimits::default()).unwrap();
        let cert = cert.certificate().unwrap();
        let p = homology_profile(&c, false).unwrap();
        assert_eq!(p.betti(c.dimension().unwrap()), cert.full_restriction_count as u64);
        assert_eq!(h_from_certificate(cert), c.h_vector().unwrap());
    }

    #[test]
    fn squared_path_counts() {
        assert_eq!(squared_path_shelling(6, 3).unwrap().full_restriction_count, 1);
        assert_eq!(squared_path_shelling(8, 4).unwrap().full_restriction_count, 11);
        assert!(squared_path_shelling(5, 3).is_err());
        for k in 2..7 {
            let c = cut(&format!("squared-path:{}", k + 2), k);
            let expected: Vec<VertexSet> = (2..=k).map(|i| VertexSet::from([i, i + 1])).collect();
            assert_eq!(c.facets(), expected.as_slice());
            assert_eq!(cut(&format!("squared-path:{}", k + 3), k).facet_count(), k * k - 1);
        }
    }

    #[test]
    fn squared_path_facets_match_connectivity() {
        for n in 4..=11 {
            for k in 2..=n - 2 {
                let direct = cut(&format!("squared-path:{n}"), k);
                assert_eq!(squared_path_facets(n, k).unwrap(), direct.facets(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn squared_path_k3_spheres() {
        for n in 6..=11 {
            let grouped = squared_path_shelling(n, 3).unwrap();
            assert_eq!(grouped.full_restriction_count as i64, binomial(n as i64 - 4, 2));
            let cert = squared_path_wedge_shelling(n).unwrap();
            let mut expected: Vec<VertexSet> = Vec::new();
            for j in 6..=n {
                for b in 1..=j - 5 {
                    expected.push(VertexSet::from([b, j - 2, j]).complement(n));
                }
            }
            expected.sort();
            let mut got = cert.full_restriction_facets();
            got.sort();
            assert_eq!(got, expected);
            assert_eq!(cert.full_restriction_count as i64, binomial(n as i64 - 4, 2));
        }
    }

    #[test]
    fn search_agrees_with_brute_force_on_tiny_complexes() {
        // Exhaustive permutation search as an oracle.
        fn shellable_by_permutations(c: &Complex) -> bool {
            fn rec(c: &Complex, order: &mut Vec<VertexSet>, left: &mut Vec<VertexSet>) -> bool {
                if left.is_empty() {
                    return verify_shelling(c, order).is_ok();
                }
                for i in 0..left.len() {
                    let f = left.remove(i);
                    order.push(f);
                    if rec(c, order, left) {
                        return true;
                    }
                    order.pop();
                    left.insert(i, f);
                }
                false
            }
            rec(c, &mut Vec::new(), &mut c.facets().to_vec())
        }
        for n in 3..=5 {
            let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, e)| *e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                let c = cut_complex(&g, 2).unwrap();
                if c.is_void() || c.facet_count() > 7 {
                    continue;
                }
                let found = find_shelling(&c, SearchLimits::default()).unwrap();
                assert!(!found.is_undecided());
                assert_eq!(found.is_found(), shellable_by_permutations(&c), "{edges:?}");
            }
        }
    }
}
