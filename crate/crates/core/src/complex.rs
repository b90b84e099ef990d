//! Abstract simplicial complexes given by their facets, and the cut complex construction.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::poly::{binomial, Poly};
use crate::vertex_set::{k_subsets, k_subsets_of, VertexSet, MAX_VERTICES};

/// A simplicial complex on the vertex universe `{1, ..., n}`.
///
/// Facets are kept sorted, deduplicated and inclusion-maximal. A complex with
/// no facets is the void complex; a single empty facet is the complex `{∅}`.
#[derive(Clone)]
pub struct Complex {
    n: usize,
    facets: Vec<VertexSet>,
    faces: OnceLock<Faces>,
}

/// Every face of a non-void complex, grouped by size and sorted lexicographically.
#[derive(Clone, Debug)]
pub struct Faces {
    by_size: Vec<Vec<VertexSet>>,
    index: Vec<HashMap<VertexSet, usize>>,
}

impl Faces {
    /// Faces of dimension `d` (size `d + 1`); `d = -1` gives the empty face.
    pub fn of_dim(&self, d: isize) -> &[VertexSet] {
        usize::try_from(d + 1)
            .ok()
            .and_then(|s| self.by_size.get(s))
            .map_or(&[], Vec::as_slice)
    }

    pub fn of_size(&self, s: usize) -> &[VertexSet] {
        self.by_size.get(s).map_or(&[], Vec::as_slice)
    }

    /// Position of `face` within its dimension's list.
    pub fn position(&self, face: VertexSet) -> Option<usize> {
        self.index.get(face.len()).and_then(|m| m.get(&face).copied())
    }

    pub fn contains(&self, face: VertexSet) -> bool {
        self.position(face).is_some()
    }

    /// Largest face size present.
    pub fn max_size(&self) -> usize {
        self.by_size.len() - 1
    }

    pub fn total(&self) -> usize {
        self.by_size.iter().map(Vec::len).sum()
    }

    /// `(dimension, faces)` pairs from `-1` upwards.
    pub fn iter(&self) -> impl Iterator<Item = (isize, &[VertexSet])> {
        self.by_size
            .iter()
            .enumerate()
            .map(|(s, v)| (s as isize - 1, v.as_slice()))
    }
}

impl Complex {
    /// Build from arbitrary generating sets; non-maximal ones are discarded.
    pub fn from_facets(n: usize, sets: impl IntoIterator<Item = VertexSet>) -> Result<Complex> {
        if n > MAX_VERTICES {
            return Err(invalid(format!("at most {MAX_VERTICES} vertices supported")));
        }
        let universe = VertexSet::full(n);
        let mut sets: Vec<VertexSet> = sets.into_iter().collect();
        if let Some(bad) = sets.iter().find(|s| !s.is_subset(universe)) {
            return Err(invalid(format!("facet {bad} is outside 1..={n}")));
        }
        sets.sort_unstable_by_key(|s| std::cmp::Reverse(s.len()));
        sets.dedup();
        let mut facets: Vec<VertexSet> = Vec::with_capacity(sets.len());
        let uniform = sets.first().map(|s| s.len()) == sets.last().map(|s| s.len());
        for s in sets {
            if uniform || !facets.iter().any(|f| s.is_subset(*f)) {
                facets.push(s);
            }
        }
        facets.sort_unstable();
        facets.dedup();
        Ok(Complex {
            n,
            facets,
            faces: OnceLock::new(),
        })
    }

    pub fn void(n: usize) -> Complex {
        Complex {
            n,
            facets: Vec::new(),
            faces: OnceLock::new(),
        }
    }

    /// The complex `{∅}`.
    pub fn empty_face_only(n: usize) -> Complex {
        Complex {
            n,
            facets: vec![VertexSet::EMPTY],
            faces: OnceLock::new(),
        }
    }

    /// The full simplex on `{1, ..., n}`.
    pub fn simplex(n: usize) -> Complex {
        Complex {
            n,
            facets: vec![VertexSet::full(n)],
            faces: OnceLock::new(),
        }
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn has_only_empty_face(&self) -> bool {
        self.facets == [VertexSet::EMPTY]
    }

    /// Dimension, or `None` for the void complex.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    pub fn contains_face(&self, s: VertexSet) -> bool {
        self.facets.iter().any(|f| s.is_subset(*f))
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// All faces, computed once and cached. Errors on the void complex.
    pub fn faces(&self) -> Result<&Faces> {
        if self.is_void() {
            return Err(Error::VoidComplex);
        }
        Ok(self.faces.get_or_init(|| enumerate_faces(&self.facets)))
    }

    /// `f(x) = Σ f_{i-1} x^i`; zero for the void complex.
    pub fn f_polynomial(&self) -> Poly {
        match self.faces() {
            Ok(faces) => Poly::new(faces.by_size.iter().map(|v| v.len() as i64).collect()),
            Err(_) => Poly::zero(),
        }
    }

    /// The h-vector `(h_0, ..., h_d)` with `d = dim + 1`.
    pub fn h_vector(&self) -> Result<Vec<i64>> {
        let f = self.f_polynomial();
        let d = self.dimension().ok_or(Error::VoidComplex)? + 1;
        let d = d as i64;
        Ok((0..=d)
            .map(|j| {
                (0..=j)
                    .map(|i| {
                        let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                        sign * binomial(d - i, j - i) * f.coeff(i as usize)
                    })
                    .sum()
            })
            .collect())
    }

    pub fn h_polynomial(&self) -> Result<Poly> {
        self.h_vector().map(Poly::new)
    }

    /// Faces of dimension at most `j`, as a complex.
    pub fn skeleton(&self, j: isize) -> Result<Complex> {
        if j < -1 {
            return Err(invalid("skeleton dimension must be at least -1"));
        }
        let size = (j + 1) as usize;
        let mut sets = Vec::new();
        for &f in &self.facets {
            if f.len() <= size {
                sets.push(f);
            } else {
                sets.extend(k_subsets_of(f, size));
            }
        }
        Complex::from_facets(self.n, sets)
    }

    /// Join with `other`, whose vertices are shifted past this universe.
    pub fn join(&self, other: &Complex) -> Result<Complex> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(invalid("join exceeds the supported vertex count"));
        }
        let sets = self
            .facets
            .iter()
            .flat_map(|&a| other.facets.iter().map(move |&b| a.union(b.shifted(self.n))));
        Complex::from_facets(n, sets.collect::<Vec<_>>())
    }

    pub fn cone(&self) -> Result<Complex> {
        self.join(&Complex::simplex(1))
    }

    pub fn suspension(&self) -> Result<Complex> {
        self.join(&Complex::from_facets(2, [VertexSet::from([1]), VertexSet::from([2])])?)
    }

    /// Whether every `(j+1)`-subset of the universe is a face.
    pub fn has_complete_skeleton(&self, j: isize) -> bool {
        if self.is_void() {
            return false;
        }
        if j < -1 {
            return true;
        }
        let size = (j + 1) as usize;
        if size > self.n {
            return false;
        }
        k_subsets(self.n, size).all(|s| self.contains_face(s))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexDoc {
            n: self.n,
            facets: self.facets.clone(),
        })
        .expect("complex serialises")
    }

    pub fn from_json(text: &str) -> Result<Complex> {
        let doc: ComplexDoc = serde_json::from_str(text)?;
        Complex::from_facets(doc.n, doc.facets)
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexDoc {
    n: usize,
    facets: Vec<VertexSet>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.facets == other.facets
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex(n={}, {self})", self.n)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            return f.write_str("void");
        }
        f.write_str("<")?;
        for (i, facet) in self.facets.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{facet}")?;
        }
        f.write_str(">")
    }
}

impl Serialize for Complex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexDoc {
            n: self.n,
            facets: self.facets.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Complex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = ComplexDoc::deserialize(d)?;
        Complex::from_facets(doc.n, doc.facets).map_err(serde::de::Error::custom)
    }
}

fn enumerate_faces(facets: &[VertexSet]) -> Faces {
    let top = facets.iter().map(|f| f.len()).max().unwrap_or(0);
    let mut by_size: Vec<Vec<VertexSet>> = vec![Vec::new(); top + 1];
    let mut level: HashSet<VertexSet> = HashSet::new();
    for size in (0..=top).rev() {
        level.extend(facets.iter().copied().filter(|f| f.len() == size));
        let mut below = HashSet::with_capacity(level.len());
        if size > 0 {
            for &face in &level {
                for v in face {
                    below.insert(face.without(v));
                }
            }
        }
        let mut sorted: Vec<VertexSet> = level.into_iter().collect();
        sorted.sort_unstable();
        by_size[size] = sorted;
        level = below;
    }
    let index = by_size
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, &f)| (f, i)).collect())
        .collect();
    Faces { by_size, index }
}

/// The `k`-cut complex: facets are the `(n-k)`-sets whose removal leaves a
/// disconnected induced subgraph.
///
/// `k = 1` and `k > n` give the void complex; `k = 0` is rejected.
pub fn cut_complex(graph: &Graph, k: usize) -> Result<Complex> {
    let n = graph.vertex_count();
    if k == 0 {
        return Err(invalid("cut complexes need k >= 1"));
    }
    if k == 1 || k > n {
        return Ok(Complex::void(n));
    }
    let facets: Vec<VertexSet> = k_subsets(n, k)
        .filter(|&s| !graph.is_connected_induced(s).expect("k >= 1"))
        .map(|s| s.complement(n))
        .collect();
    Complex::from_facets(n, facets)
}
