//! A combinatorial condition on connected sets that forces the face lattice
//! of a cut complex to be the truncated Boolean lattice minus those sets.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeMode {
    /// Only connected `k`-sets are removed.
    Antichain,
    /// Vertex sets carrying a `(k+1)`-cycle are removed as well (needs `k >= 3`).
    AntichainPlusCycles,
}

/// A set and an outside vertex for which no exchange disconnects the set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeWitness {
    pub set: VertexSet,
    pub x: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub holds: bool,
    /// Number of `(set, x)` pairs examined.
    pub checked: usize,
    /// First failing pair in lexicographic order.
    pub counterexample: Option<LatticeWitness>,
}

/// Whether `(set \ y) ∪ x` is disconnected for some `y ∈ set`.
fn some_exchange_disconnects(graph: &Graph, set: VertexSet, x: usize) -> bool {
    set.iter().any(|y| {
        let s = set.without(y).with(x);
        graph.components(s).len() > 1
    })
}

/// Checks the exchange condition for every connected `k`-set `A` and vertex
/// `x ∉ A`. In cycle mode, pairs with `A ∪ x` carrying a `(k+1)`-cycle are
/// skipped, and the condition is checked on those cycle sets instead.
pub fn face_lattice_condition(graph: &Graph, k: usize, mode: LatticeMode) -> Result<LatticeReport> {
    let n = graph.vertex_count();
    if k < 2 || k >= n {
        return Err(invalid(format!("need 2 <= k < {n}, got {k}")));
    }
    let cycles: BTreeSet<VertexSet> = match mode {
        LatticeMode::Antichain => BTreeSet::new(),
        LatticeMode::AntichainPlusCycles if k < 3 => {
            return Err(invalid("the cycle mode needs k >= 3"));
        }
        LatticeMode::AntichainPlusCycles => graph.cycle_sets(k + 1)?.into_iter().collect(),
    };
    let mut candidates: Vec<VertexSet> = graph.connected_k_subsets(k);
    candidates.extend(cycles.iter().copied());
    candidates.sort();

    let mut checked = 0;
    for set in candidates {
        for x in graph.vertices().difference(set) {
            if set.len() == k && cycles.contains(&set.with(x)) {
                continue;
            }
            checked += 1;
            if !some_exchange_disconnects(graph, set, x) {
                return Ok(LatticeReport {
                    holds: false,
                    checked,
                    counterexample: Some(LatticeWitness { set, x }),
                });
            }
        }
    }
    Ok(LatticeReport {
        holds: true,
        checked,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cut_complex, Complex};
    use crate::graph::make_family;
    use crate::vertex_set::k_subsets;

    fn g(descriptor: &str) -> Graph {
        make_family(&descriptor.parse().unwrap()).unwrap()
    }

    /// Whether the faces of `Δ_k` are exactly the sets of size at most `n - k`
    /// whose complement is not a removed set.
    fn lattice_is_truncated_boolean_minus(graph: &Graph, k: usize, removed: &BTreeSet<VertexSet>) -> bool {
        let n = graph.vertex_count();
        let c: Complex = cut_complex(graph, k).unwrap();
        (0..=n - k).all(|size| k_subsets(n, size).all(|f| c.contains_face(f) != removed.contains(&f.complement(n))))
    }

    #[test]
    fn grid_examples() {
        let report = face_lattice_condition(&g("grid:3x3"), 8, LatticeMode::Antichain).unwrap();
        assert!(!report.holds);
        assert_eq!(
            report.counterexample,
            Some(LatticeWitness {
                set: VertexSet::full(8),
                x: 9
            })
        );
        assert!(
            face_lattice_condition(&g("grid:3x3"), 3, LatticeMode::AntichainPlusCycles)
                .unwrap()
                .holds
        );
        assert!(face_lattice_condition(&g("path:4"), 2, LatticeMode::AntichainPlusCycles).is_err());
        assert!(face_lattice_condition(&g("path:4"), 4, LatticeMode::Antichain).is_err());
    }

    #[test]
    fn condition_implies_the_lattice_shape() {
        for descriptor in [
            "grid:2x3",
            "grid:2x4",
            "grid:3x3",
            "cycle:6",
            "path:6",
            "squared-path:6",
        ] {
            let graph = g(descriptor);
            let n = graph.vertex_count();
            for k in 2..n {
                let report = face_lattice_condition(&graph, k, LatticeMode::Antichain).unwrap();
                if report.holds {
                    let removed: BTreeSet<_> = graph.connected_k_subsets(k).into_iter().collect();
                    assert!(
                        lattice_is_truncated_boolean_minus(&graph, k, &removed),
                        "{descriptor} k={k}"
                    );
                }
            }
        }
    }
}
