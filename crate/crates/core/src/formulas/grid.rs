//! Counting formulas for cut complexes of grid graphs `G(m, n)`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{PredictedInvariant, Quantity};
use crate::complex::cut_complex;
use crate::error::{invalid, Result};
use crate::graph::{make_family, Family};
use crate::poly::binomial;

fn sorted_dims(m: usize, n: usize) -> Result<(i64, i64)> {
    if m < 2 || n < 2 {
        return Err(invalid(format!("grid formulas need m, n >= 2, got {m}x{n}")));
    }
    Ok((m.min(n) as i64, m.max(n) as i64))
}

/// Top Betti number of the shellable complex `Δ₃(G(m, n))`.
pub fn grid_betti_delta3(m: usize, n: usize) -> Result<i64> {
    let (m, n) = sorted_dims(m, n)?;
    Ok(binomial(m * n - 1, 2) - 5 * m * n + 5 * (m + n) - 3)
}

/// Number of connected 3-vertex subsets of `G(m, n)`.
pub fn grid_tau3(m: usize, n: usize) -> Result<i64> {
    let (m, n) = sorted_dims(m, n)?;
    Ok(6 * m * n - 6 * m - 6 * n + 4)
}

/// Number of connected 4-vertex subsets of `G(m, n)`; `G(2, 2)` is outside
/// the range of the formula.
pub fn grid_connected4(m: usize, n: usize) -> Result<i64> {
    let (m, n) = sorted_dims(m, n)?;
    match (m, n) {
        (2, 2) => Err(invalid("the connected 4-set formula needs n > m = 2 or m, n >= 3")),
        (2, n) => Ok(11 * n - 23),
        (m, n) => Ok(19 * m * n - 28 * (m + n) + 33),
    }
}

fn sign(exponent: i64) -> i64 {
    if exponent.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn grid_label(m: usize, n: usize) -> String {
    Family::Grid(m, n).to_string()
}

/// `(-1)^{mn-k-1} (C(mn-1, k-1) - τ_k)`, the reduced Euler characteristic
/// `Δ_k(G(m, n))` would have if its face lattice were the truncated Boolean
/// lattice minus the connected `k`-sets.
pub fn grid_antichain_prediction(m: usize, n: usize, k: usize) -> Result<PredictedInvariant> {
    let g = make_family(&Family::Grid(m, n))?;
    let size = (m * n) as i64;
    let tau = g.connected_k_subsets(k).len() as i64;
    let value = sign(size - k as i64 - 1) * (binomial(size - 1, k as i64 - 1) - tau);
    Ok(PredictedInvariant {
        family: grid_label(m, n),
        parameters: vec![("k".into(), k as i64)],
        quantity: Quantity::Euler,
        value,
        source: "truncated Boolean lattice minus connected k-sets".into(),
    })
}

/// Reduced Euler characteristic of `Δ_k(G(m, n))` for `k ∈ {2, 4, 5, 6}`.
///
/// For even `k` the face lattice is the truncated Boolean lattice minus the
/// connected `k`-sets. For `k = 5` the vertex sets spanning a 6-cycle are
/// removed as well, giving `(-1)^{mn-6} (#facets - C(mn-1, 5) + #6-cycle sets)`.
pub fn grid_euler_predictions(m: usize, n: usize, k: usize) -> Result<PredictedInvariant> {
    match k {
        2 | 4 | 6 => grid_antichain_prediction(m, n, k),
        5 => {
            let g = make_family(&Family::Grid(m, n))?;
            let size = (m * n) as i64;
            let facets = cut_complex(&g, 5)?.facet_count() as i64;
            let cycles = g.cycle_sets(6)?.len() as i64;
            Ok(PredictedInvariant {
                family: grid_label(m, n),
                parameters: vec![("k".into(), 5)],
                quantity: Quantity::Euler,
                value: sign(size - 6) * (facets - binomial(size - 1, 5) + cycles),
                source: "truncated Boolean lattice minus connected 5-sets and 6-cycle sets".into(),
            })
        }
        _ => Err(invalid(format!(
            "grid Euler predictions exist for k in {{2, 4, 5, 6}}, got {k}"
        ))),
    }
}

/// Facet count and reduced Betti numbers of the 1-dimensional `Δ_{mn-2}(G(m, n))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneDimPrediction {
    pub k: usize,
    pub facets: usize,
    pub betti: BTreeMap<isize, u64>,
}

/// Prediction for the 1-dimensional cut complex `Δ_{mn-2}(G(m, n))`.
pub fn grid_one_dim_prediction(m: usize, n: usize) -> Result<OneDimPrediction> {
    let (m, n) = sorted_dims(m, n)?;
    let (m, n) = (m as usize, n as usize);
    let (facets, betti) = match (m, n) {
        (2, 2) => (2, BTreeMap::from([(0, 1)])),
        (2, 3) => (5, BTreeMap::new()),
        (2, n) => (3 * n - 4, BTreeMap::from([(1, n as u64 - 3)])),
        (3, 3) => (4, BTreeMap::from([(1, 1)])),
        (3, _) => (4, BTreeMap::from([(0, 1)])),
        _ => (4, BTreeMap::from([(0, 3)])),
    };
    Ok(OneDimPrediction {
        k: m * n - 2,
        facets,
        betti,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology_profile;

    fn grid(m: usize, n: usize) -> crate::graph::Graph {
        make_family(&Family::Grid(m, n)).unwrap()
    }

    #[test]
    fn closed_forms_match_brute_force() {
        for m in 2..=6 {
            for n in 2..=6 {
                let g = grid(m, n);
                assert_eq!(grid_tau3(m, n).unwrap(), g.connected_k_subsets(3).len() as i64);
                if (m, n) != (2, 2) {
                    assert_eq!(grid_connected4(m, n).unwrap(), g.connected_k_subsets(4).len() as i64);
                }
            }
        }
        assert!(grid_connected4(2, 2).is_err());
        assert_eq!(grid_tau3(2, 3).unwrap(), 10);
        assert_eq!(grid_connected4(3, 3).unwrap(), 36);
    }

    #[test]
    fn delta3_betti_matches_homology() {
        for (m, n, b) in [(2, 2, 0), (2, 3, 2), (2, 4, 8), (2, 5, 18), (3, 3, 10), (3, 4, 27)] {
            assert_eq!(grid_betti_delta3(m, n).unwrap(), b);
            let p = homology_profile(&cut_complex(&grid(m, n), 3).unwrap(), false).unwrap();
            let top = (m * n - 4) as isize;
            assert_eq!(p.betti.get(&top).copied().unwrap_or(0) as i64, b);
            assert!(p.betti.keys().all(|&d| d == top));
        }
    }

    #[test]
    fn euler_predictions_match_homology() {
        for (m, n) in [(2, 3), (2, 4), (3, 3), (2, 5)] {
            for k in [2, 4, 5, 6] {
                let c = cut_complex(&grid(m, n), k).unwrap();
                if c.is_void() {
                    continue;
                }
                let p = homology_profile(&c, false).unwrap();
                let predicted = grid_euler_predictions(m, n, k).unwrap();
                assert_eq!(predicted.value, p.euler_reduced, "{m}x{n} k={k}");
            }
        }
        assert_eq!(grid_euler_predictions(2, 4, 4).unwrap().value.abs(), 14);
        assert_eq!(grid_euler_predictions(3, 3, 5).unwrap().value.abs(), 25);
        assert_eq!(grid_antichain_prediction(3, 3, 5).unwrap().value.abs(), 21);
        assert_eq!(grid_antichain_prediction(2, 4, 5).unwrap().value.abs(), 11);
        assert_eq!(grid_euler_predictions(2, 4, 6).unwrap().value.abs(), 1);
    }

    #[test]
    fn one_dimensional_cases() {
        for (m, n) in [(2, 2), (2, 3), (2, 4), (2, 6), (3, 3), (3, 4), (4, 4), (3, 5)] {
            let predicted = grid_one_dim_prediction(m, n).unwrap();
            let c = cut_complex(&grid(m, n), predicted.k).unwrap();
            assert_eq!(c.facet_count(), predicted.facets, "{m}x{n}");
            assert_eq!(homology_profile(&c, false).unwrap().betti, predicted.betti, "{m}x{n}");
        }
        let p = grid_one_dim_prediction(2, 6).unwrap();
        assert_eq!((p.k, p.facets, p.betti.get(&1).copied()), (10, 14, Some(3)));
    }
}
