//! Reduced simplicial homology and Lefschetz traces.
//!
//! Chains are indexed by the lexicographically sorted faces of each dimension,
//! with the empty face spanning the augmentation in degree `-1`. Removing the
//! `p`-th smallest vertex (0-based) of a face contributes the sign `(-1)^p`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{invalid, Error, Result};
use crate::linalg::{factor_to_u64, rank_over_rationals, smith_form, SparseMatrix};
use crate::perm::Permutation;
use crate::vertex_set::VertexSet;

/// Reduced Betti numbers and, optionally, torsion coefficients.
///
/// Only nonzero Betti numbers and nontrivial torsion are stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub betti: BTreeMap<isize, u64>,
    /// Invariant factors greater than one per dimension; `None` if not computed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub torsion: Option<BTreeMap<isize, Vec<u64>>>,
    pub euler_reduced: i64,
}

impl HomologyProfile {
    pub fn betti(&self, d: isize) -> u64 {
        self.betti.get(&d).copied().unwrap_or(0)
    }

    /// Whether all reduced homology vanishes (over ℚ, and over ℤ if torsion was computed).
    pub fn is_acyclic(&self) -> bool {
        self.betti.is_empty() && self.torsion.as_ref().is_none_or(BTreeMap::is_empty)
    }

    /// The single dimension carrying rational homology, if there is exactly one.
    pub fn concentrated_dimension(&self) -> Option<isize> {
        match self.betti.len() {
            1 => self.betti.keys().next().copied(),
            _ => None,
        }
    }

    pub fn is_torsion_free(&self) -> Option<bool> {
        self.torsion.as_ref().map(BTreeMap::is_empty)
    }

    /// Highest dimension with a nonzero Betti number.
    pub fn top_dimension(&self) -> Option<isize> {
        self.betti.keys().next_back().copied()
    }
}

/// Boundary map from dimension `d` to `d - 1`, rows and columns in lexicographic face order.
pub fn boundary_matrix(complex: &Complex, d: isize) -> Result<SparseMatrix> {
    let faces = complex.faces()?;
    let dim = complex.dimension().unwrap();
    if d < -1 || d > dim {
        return Err(invalid(format!("boundary dimension {d} outside -1..={dim}")));
    }
    let rows = faces.of_dim(d - 1).len();
    let columns = faces
        .of_dim(d)
        .iter()
        .map(|&face| {
            face.iter()
                .enumerate()
                .map(|(p, v)| {
                    let row = faces.position(face.without(v)).expect("complex is closed");
                    (row as u32, if p % 2 == 0 { 1 } else { -1 })
                })
                .collect()
        })
        .collect();
    Ok(SparseMatrix::new(rows, columns))
}

/// Reduced homology. The void complex has no homology at all.
///
/// Betti numbers come from exact ranks over ℚ. When `with_torsion` is set,
/// every boundary map is also diagonalised over ℤ and the two rank
/// computations are required to agree.
pub fn homology_profile(complex: &Complex, with_torsion: bool) -> Result<HomologyProfile> {
    let Some(dim) = complex.dimension() else {
        return Ok(HomologyProfile {
            betti: BTreeMap::new(),
            torsion: with_torsion.then(BTreeMap::new),
            euler_reduced: 0,
        });
    };
    let faces = complex.faces()?;
    // ranks[d + 1] = rank of the boundary out of dimension d, for d in -1..=dim.
    let per_dim: Vec<(usize, Option<Vec<u64>>)> = (-1..=dim)
        .into_par_iter()
        .map(|d| {
            let m = boundary_matrix(complex, d)?;
            let rank = rank_over_rationals(&m);
            if !with_torsion {
                return Ok((rank, None));
            }
            let smith = smith_form(&m);
            assert_eq!(smith.rank, rank, "rational and integral ranks disagree in degree {d}");
            let torsion = smith
                .torsion
                .iter()
                .map(|t| factor_to_u64(t).ok_or_else(|| invalid("torsion coefficient exceeds u64")))
                .collect::<Result<Vec<_>>>()?;
            Ok((rank, Some(torsion)))
        })
        .collect::<Result<_>>()?;
    let rank_out = |d: isize| -> usize {
        if d < -1 || d > dim {
            0
        } else {
            per_dim[(d + 1) as usize].0
        }
    };
    let mut betti = BTreeMap::new();
    let mut euler = 0i64;
    for d in -1..=dim {
        let chains = faces.of_dim(d).len();
        let b = chains - rank_out(d) - rank_out(d + 1);
        if b > 0 {
            betti.insert(d, b as u64);
        }
        euler += if d.rem_euclid(2) == 0 {
            chains as i64
        } else {
            -(chains as i64)
        };
    }
    let torsion = with_torsion.then(|| {
        // Torsion of H_d is read off the boundary into dimension d.
        (-1..dim)
            .filter_map(|d| {
                let t = per_dim[(d + 2) as usize].1.clone().unwrap_or_default();
                (!t.is_empty()).then_some((d, t))
            })
            .collect()
    });
    Ok(HomologyProfile {
        betti,
        torsion,
        euler_reduced: euler,
    })
}

/// `Σ (-1)^d f_d` over all dimensions from `-1`; 0 for void, `-1` for `{∅}`.
pub fn euler_characteristic_reduced(complex: &Complex) -> i64 {
    complex
        .f_polynomial()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(size, &f)| if size % 2 == 1 { f } else { -f })
        .sum()
}

/// Lefschetz number `Σ_d (-1)^d tr(g | C_d)` of an automorphism on the augmented chain complex.
///
/// A fixed face contributes the sign of the permutation `g` induces on it.
pub fn lefschetz_trace(complex: &Complex, g: &Permutation) -> Result<i64> {
    let n = complex.universe_size();
    if g.degree() != n {
        return Err(Error::NotPermutation(n));
    }
    check_invariant(complex, g)?;
    if complex.is_void() {
        return Ok(0);
    }
    let faces = complex.faces()?;
    let cycles: Vec<(VertexSet, i64)> = g
        .cycles()
        .into_iter()
        .map(|c| {
            let sign = if c.len() % 2 == 0 { -1 } else { 1 };
            (c.into_iter().collect(), sign)
        })
        .collect();
    // Fixed faces are exactly unions of cycles of g.
    let mut total = 0i64;
    for pick in 0u64..(1u64 << cycles.len()) {
        let mut face = VertexSet::EMPTY;
        let mut sign = 1;
        for (i, (c, s)) in cycles.iter().enumerate() {
            if pick >> i & 1 == 1 {
                face = face.union(*c);
                sign *= s;
            }
        }
        if faces.contains(face) {
            let dim = face.len() as i64 - 1;
            total += if dim.rem_euclid(2) == 0 { sign } else { -sign };
        }
    }
    Ok(total)
}

/// Trace of `g` on reduced homology when it is concentrated in one dimension.
pub fn trace_on_homology(complex: &Complex, profile: &HomologyProfile, g: &Permutation) -> Result<Option<i64>> {
    let lefschetz = lefschetz_trace(complex, g)?;
    Ok(match profile.concentrated_dimension() {
        Some(d) => Some(if d.rem_euclid(2) == 0 { lefschetz } else { -lefschetz }),
        None if profile.betti.is_empty() => Some(0),
        None => None,
    })
}

fn check_invariant(complex: &Complex, g: &Permutation) -> Result<()> {
    for &f in complex.facets() {
        let image = g.apply_set(f);
        if complex.facets().binary_search(&image).is_err() {
            return Err(Error::NotInvariant(f));
        }
    }
    Ok(())
}
