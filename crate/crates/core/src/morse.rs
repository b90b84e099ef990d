//! Discrete Morse matchings: element matchings, the tetromino matching on the
//! 4-cut complex of a grid, and a verifier for validity and acyclicity.

#[cfg(test)]
use std::collections::HashMap;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{cut_complex, Complex, Faces};
use crate::error::{invalid, Error, Result};
use crate::graph::{grid_coords, grid_vertex, make_family, Family};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A grid cell as a 1-based `(row, col)` pair.
pub type Cell = (usize, usize);

/// A partial pairing of faces with cofaces one vertex larger.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseMatching {
    /// `(σ, τ)` with `τ = σ ∪ {x}`.
    pub pairs: Vec<(VertexSet, VertexSet)>,
    /// Unmatched faces.
    pub critical: Vec<VertexSet>,
}

impl MorseMatching {
    /// Critical cells counted by dimension.
    pub fn critical_by_dim(&self) -> BTreeMap<isize, usize> {
        let mut counts = BTreeMap::new();
        for c in &self.critical {
            *counts.entry(c.len() as isize - 1).or_default() += 1;
        }
        counts
    }
}

/// Pair every face `σ` missing `v` with `σ ∪ {v}` whenever that is a face.
pub fn element_matching(complex: &Complex, v: usize) -> Result<MorseMatching> {
    if !complex.facets().iter().any(|f| f.contains(v)) {
        return Err(invalid(format!("{v} is not a vertex of the complex")));
    }
    let faces = complex.faces()?;
    let mut matching = MorseMatching::default();
    for (_, level) in faces.iter() {
        for &sigma in level {
            if sigma.contains(v) {
                continue;
            }
            let tau = sigma.with(v);
            if faces.contains(tau) {
                matching.pairs.push((sigma, tau));
            } else {
                matching.critical.push(sigma);
            }
        }
    }
    Ok(matching)
}

/// The six tetromino classes, with S and Z kept apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shape {
    O,
    S,
    Z,
    T,
    L,
    I,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

type Point = (i64, i64);

/// Reference placement of each shape and its marked cell, 0-based `(row, col)`.
const SHAPES: [(Shape, [Point; 4], Point); 6] = [
    (Shape::O, [(0, 0), (0, 1), (1, 0), (1, 1)], (0, 0)),
    (Shape::S, [(1, 0), (1, 1), (0, 1), (0, 2)], (0, 1)),
    (Shape::Z, [(0, 0), (0, 1), (1, 1), (1, 2)], (1, 1)),
    (Shape::T, [(0, 0), (0, 1), (0, 2), (1, 1)], (0, 1)),
    (Shape::L, [(0, 0), (1, 0), (2, 0), (2, 1)], (1, 0)),
    (Shape::I, [(0, 0), (1, 0), (2, 0), (3, 0)], (2, 0)),
];

/// The eight symmetries of the square; the first four are rotations.
fn transform(t: usize, (r, c): Point) -> Point {
    match t {
        0 => (r, c),
        1 => (c, -r),
        2 => (-r, -c),
        3 => (-c, r),
        4 => (r, -c),
        5 => (-r, c),
        6 => (c, r),
        _ => (-c, -r),
    }
}

fn min_corner(points: &[Point]) -> Point {
    let r = points.iter().map(|p| p.0).min().unwrap_or(0);
    let c = points.iter().map(|p| p.1).min().unwrap_or(0);
    (r, c)
}

fn normalized(points: &[Point]) -> Vec<Point> {
    let (r0, c0) = min_corner(points);
    let mut out: Vec<Point> = points.iter().map(|&(r, c)| (r - r0, c - c0)).collect();
    out.sort_unstable();
    out
}

/// A classified tetromino in the grid with its marked cell `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tetromino {
    pub shape: Shape,
    pub cells: [Cell; 4],
    pub y: Cell,
    #[serde(skip)]
    placement: Placement,
}

/// Symmetry and translation carrying the reference frame onto the grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Placement {
    symmetry: usize,
    shift: Point,
}

impl Placement {
    fn place(&self, p: Point) -> Point {
        let (r, c) = transform(self.symmetry, p);
        (r + self.shift.0, c + self.shift.1)
    }
}

impl Tetromino {
    /// Image in the grid of a point of the shape's reference frame, using the
    /// same symmetry that placed `y`. `None` if it falls off the top or left.
    pub fn frame_cell(&self, row: i64, col: i64) -> Option<Cell> {
        let (r, c) = self.placement.place((row, col));
        (r >= 1 && c >= 1).then_some((r as usize, c as usize))
    }
}

/// Classify four grid cells up to translation and symmetry.
///
/// S and Z pieces may only be rotated, so they never reflect into each other;
/// the other shapes may also be reflected (so L covers J). When several
/// symmetries fit, `y` is the lexicographically smallest image of the marked
/// cell. For the square that is its top-left cell.
pub fn classify_tetromino(cells: &[Cell]) -> Result<Tetromino> {
    let mut sorted = cells.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != 4 || cells.len() != 4 {
        return Err(invalid("a tetromino has four distinct cells"));
    }
    if sorted.iter().any(|&(r, c)| r == 0 || c == 0) {
        return Err(invalid("grid cells are 1-based"));
    }
    let points: Vec<Point> = sorted.iter().map(|&(r, c)| (r as i64, c as i64)).collect();
    let target = normalized(&points);
    let corner = min_corner(&points);
    for (shape, reference, marked) in SHAPES {
        let symmetries = if matches!(shape, Shape::S | Shape::Z) {
            0..4
        } else {
            0..8
        };
        let best = symmetries
            .filter_map(|t| {
                let image: Vec<Point> = reference.iter().map(|&p| transform(t, p)).collect();
                if normalized(&image) != target {
                    return None;
                }
                let (r0, c0) = min_corner(&image);
                let placement = Placement {
                    symmetry: t,
                    shift: (corner.0 - r0, corner.1 - c0),
                };
                Some((placement.place(marked), placement))
            })
            .min_by_key(|&(y, _)| y);
        if let Some(((yr, yc), placement)) = best {
            return Ok(Tetromino {
                shape,
                cells: [sorted[0], sorted[1], sorted[2], sorted[3]],
                y: (yr as usize, yc as usize),
                placement,
            });
        }
    }
    Err(invalid(format!("{sorted:?} is not an edge-connected tetromino")))
}

/// Codimension-one faces `σ` of `Δ₄(G(m, n))` missing vertex 1 whose
/// complement minus vertex 1 is connected, with that complement classified.
pub fn grid_delta4_near_facets(m: usize, n: usize) -> Result<Vec<(VertexSet, Tetromino)>> {
    let complex = grid_delta4(m, n)?;
    near_facets(&complex, n)
}

fn grid_delta4(m: usize, n: usize) -> Result<Complex> {
    if m == 0 || n == 0 || m * n < 6 || m * n > MAX_VERTICES {
        return Err(invalid(format!("grid {m}x{n} needs 6 <= mn <= {MAX_VERTICES}")));
    }
    cut_complex(&make_family(&Family::Grid(m, n))?, 4)
}

fn near_facets(complex: &Complex, n_cols: usize) -> Result<Vec<(VertexSet, Tetromino)>> {
    let size = complex.universe_size();
    let corner = 1;
    let faces = complex.faces()?;
    faces
        .of_size(size - 5)
        .iter()
        .filter(|s| !s.contains(corner))
        .filter_map(|&sigma| {
            let rest = sigma.with(corner).complement(size);
            let cells: Vec<Cell> = rest.iter().map(|v| grid_coords(n_cols, v)).collect();
            match classify_tetromino(&cells) {
                Ok(t) => Some(Ok((sigma, t))),
                Err(_) => None,
            }
        })
        .collect()
}

/// The tetromino matching on `Δ₄(G(m, n))`.
///
/// Start from the element matching with the top-left vertex, then match each
/// leftover codimension-one face `σ` with `σ ∪ {y}`, where `y` is the marked
/// cell of the tetromino `(σ ∪ {v})^c`.
pub fn grid_delta4_matching(m: usize, n: usize) -> Result<MorseMatching> {
    let complex = grid_delta4(m, n)?;
    let mut matching = element_matching(&complex, 1)?;
    let extra: Vec<(VertexSet, VertexSet)> = near_facets(&complex, n)?
        .into_iter()
        .map(|(sigma, t)| (sigma, sigma.with(grid_vertex(n, t.y.0, t.y.1))))
        .collect();
    let used: HashSet<VertexSet> = extra.iter().flat_map(|&(a, b)| [a, b]).collect();
    matching.critical.retain(|c| !used.contains(c));
    matching.pairs.extend(extra);
    Ok(matching)
}

/// Outcome of [`verify_matching`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingReport {
    pub valid: bool,
    pub acyclic: bool,
    pub critical_by_dim: BTreeMap<isize, usize>,
    /// A directed cycle in the modified face graph, if one exists.
    pub cycle: Option<Vec<VertexSet>>,
    /// Reasons the matching is invalid.
    pub issues: Vec<String>,
}

impl MatchingReport {
    /// `Σ_d (-1)^d c_d` over the critical cells, including the empty face.
    pub fn signed_critical_count(&self) -> i64 {
        self.critical_by_dim
            .iter()
            .map(|(&d, &c)| if d.rem_euclid(2) == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

/// Check that `matching` is a Morse matching of `complex`.
///
/// Validity means every face is in exactly one pair or is critical, and each
/// pair differs by one vertex. Acyclicity is decided on the whole face graph:
/// matched pairs point up, all other covering relations point down.
pub fn verify_matching(complex: &Complex, matching: &MorseMatching) -> Result<MatchingReport> {
    let faces = complex.faces()?;
    let all = matching
        .pairs
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .chain(matching.critical.iter().copied());
    if let Some(foreign) = all.clone().find(|&f| !faces.contains(f)) {
        return Err(Error::NotAFace(foreign));
    }
    let index = FaceIndex::new(faces);
    let mut issues = Vec::new();
    let mut seen = vec![0u32; index.len()];
    for f in all {
        seen[index.of(f)] += 1;
    }
    for &(sigma, tau) in &matching.pairs {
        if !sigma.is_subset(tau) || tau.len() != sigma.len() + 1 {
            issues.push(format!("pair ({sigma}, {tau}) does not differ by one vertex"));
        }
    }
    for (i, &count) in seen.iter().enumerate() {
        match count {
            1 => {}
            0 => issues.push(format!("face {} is neither matched nor critical", index.face(i))),
            _ => issues.push(format!("face {} appears {count} times", index.face(i))),
        }
    }
    let expected = 2 * matching.pairs.len() + matching.critical.len();
    if expected != index.len() {
        issues.push(format!(
            "{expected} matched or critical cells but {} faces",
            index.len()
        ));
    }
    let mut up = vec![usize::MAX; index.len()];
    for &(sigma, tau) in &matching.pairs {
        if sigma.is_subset(tau) && tau.len() == sigma.len() + 1 {
            up[index.of(sigma)] = index.of(tau);
        }
    }
    let cycle = find_cycle(&index, &up);
    Ok(MatchingReport {
        valid: issues.is_empty(),
        acyclic: cycle.is_none(),
        critical_by_dim: matching.critical_by_dim(),
        cycle,
        issues,
    })
}

/// Global numbering of the faces of a complex.
struct FaceIndex<'a> {
    faces: &'a Faces,
    offsets: Vec<usize>,
}

impl<'a> FaceIndex<'a> {
    fn new(faces: &'a Faces) -> Self {
        let mut offsets = vec![0];
        for s in 0..=faces.max_size() {
            offsets.push(offsets[s] + faces.of_size(s).len());
        }
        FaceIndex { faces, offsets }
    }

    fn len(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    fn of(&self, f: VertexSet) -> usize {
        self.offsets[f.len()] + self.faces.position(f).expect("face of the complex")
    }

    fn face(&self, i: usize) -> VertexSet {
        let s = self.offsets.partition_point(|&o| o <= i) - 1;
        self.faces.of_size(s)[i - self.offsets[s]]
    }

    /// Out-neighbours in the modified face graph.
    fn successors<'b>(&'b self, i: usize, up: &'b [usize]) -> impl Iterator<Item = usize> + 'b {
        let f = self.face(i);
        let down = f
            .iter()
            .map(move |x| self.of(f.without(x)))
            .filter(move |&j| up[j] != i);
        down.chain((up[i] != usize::MAX).then_some(up[i]))
    }
}

fn find_cycle(index: &FaceIndex<'_>, up: &[usize]) -> Option<Vec<VertexSet>> {
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let mut colour = vec![WHITE; index.len()];
    for root in 0..index.len() {
        if colour[root] != WHITE {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, index.successors(root, up).collect())];
        colour[root] = GREY;
        while let Some((node, pending)) = stack.last_mut() {
            let node = *node;
            match pending.pop() {
                Some(next) if colour[next] == GREY => {
                    let start = stack.iter().position(|(f, _)| *f == next).unwrap_or(0);
                    return Some(stack[start..].iter().map(|(f, _)| index.face(*f)).collect());
                }
                Some(next) if colour[next] == WHITE => {
                    colour[next] = GREY;
                    stack.push((next, index.successors(next, up).collect()));
                }
                Some(_) => {}
                None => {
                    colour[node] = BLACK;
                    stack.pop();
                }
            }
        }
    }
    None
}

/// Faces grouped by tetromino class, for reporting.
pub fn near_facet_classes(m: usize, n: usize) -> Result<BTreeMap<Shape, usize>> {
    let mut counts = BTreeMap::new();
    for (_, t) in grid_delta4_near_facets(m, n)? {
        *counts.entry(t.shape).or_default() += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology_profile;
    use crate::poly::binomial;

    fn grid_graph(m: usize, n: usize) -> crate::graph::Graph {
        make_family(&Family::Grid(m, n)).unwrap()
    }

    #[test]
    fn element_matching_collapses_cones_and_simplices() {
        let base = Complex::from_facets(4, [VertexSet::from([1, 2]), VertexSet::from([2, 3, 4])]).unwrap();
        let cone = base.cone().unwrap();
        let m = element_matching(&cone, 5).unwrap();
        assert!(m.critical.is_empty());
        assert!(verify_matching(&cone, &m).unwrap().acyclic);
        let simplex = Complex::simplex(4);
        for v in 1..=4 {
            assert!(element_matching(&simplex, v).unwrap().critical.is_empty());
        }
        assert!(element_matching(&base, 6).is_err());
    }

    #[test]
    fn element_matching_on_grid_leaves_near_facets() {
        for (m, n) in [(2, 3), (2, 4), (3, 3)] {
            let g = grid_graph(m, n);
            let c = cut_complex(&g, 4).unwrap();
            let size = m * n;
            let mut expected: Vec<VertexSet> = c
                .facets()
                .iter()
                .copied()
                .filter(|f| !f.contains(1))
                .chain(
                    c.faces()
                        .unwrap()
                        .of_size(size - 5)
                        .iter()
                        .copied()
                        .filter(|s| !s.contains(1) && g.is_connected_induced(s.with(1).complement(size)).unwrap()),
                )
                .collect();
            expected.sort_unstable();
            let mut critical = element_matching(&c, 1).unwrap().critical;
            critical.sort_unstable();
            assert_eq!(critical, expected);
        }
    }

    #[test]
    fn classify_examples() {
        let o = classify_tetromino(&[(1, 1), (1, 2), (2, 1), (2, 2)]).unwrap();
        assert_eq!((o.shape, o.y), (Shape::O, (1, 1)));
        let s = classify_tetromino(&[(2, 1), (2, 2), (1, 2), (1, 3)]).unwrap();
        assert_eq!((s.shape, s.y), (Shape::S, (1, 2)));
        let i = classify_tetromino(&[(1, 1), (2, 1), (3, 1), (4, 1)]).unwrap();
        assert_eq!((i.shape, i.y), (Shape::I, (2, 1)));
        let z = classify_tetromino(&[(1, 1), (1, 2), (2, 2), (2, 3)]).unwrap();
        assert_eq!(z.shape, Shape::Z);
        assert!(classify_tetromino(&[(1, 1), (1, 2), (3, 1), (3, 2)]).is_err());
        assert!(classify_tetromino(&[(1, 1), (1, 2), (1, 3)]).is_err());
    }

    #[test]
    fn all_fixed_tetrominoes_classify() {
        let g = grid_graph(4, 4);
        let mut shapes: BTreeMap<Shape, std::collections::BTreeSet<Vec<Point>>> = BTreeMap::new();
        for s in g.connected_k_subsets(4) {
            let cells: Vec<Cell> = s.iter().map(|v| grid_coords(4, v)).collect();
            let t = classify_tetromino(&cells).unwrap();
            assert!(t.cells.contains(&t.y));
            let pts: Vec<Point> = cells.iter().map(|&(r, c)| (r as i64, c as i64)).collect();
            shapes.entry(t.shape).or_default().insert(normalized(&pts));
        }
        let fixed: BTreeMap<Shape, usize> = shapes.iter().map(|(k, v)| (*k, v.len())).collect();
        let expected = BTreeMap::from([
            (Shape::O, 1),
            (Shape::S, 2),
            (Shape::Z, 2),
            (Shape::T, 4),
            (Shape::L, 8),
            (Shape::I, 2),
        ]);
        assert_eq!(fixed, expected);
    }

    #[test]
    fn grid_matching_counts() {
        for (m, n, count) in [(2, 4, 14), (3, 3, 20), (2, 5, 52)] {
            let c = grid_delta4(m, n).unwrap();
            let matching = grid_delta4_matching(m, n).unwrap();
            let report = verify_matching(&c, &matching).unwrap();
            assert!(report.valid, "{:?}", report.issues);
            assert!(report.acyclic);
            let top = (m * n - 5) as isize;
            assert_eq!(report.critical_by_dim, BTreeMap::from([(top, count)]));
            let connected = grid_graph(m, n).connected_k_subsets(4).len() as i64;
            assert_eq!(count as i64, binomial((m * n) as i64 - 1, 3) - connected);
        }
    }

    #[test]
    fn grid_matching_agrees_with_homology() {
        for (m, n) in [(2, 3), (2, 4), (3, 3), (2, 5), (3, 4)] {
            let c = grid_delta4(m, n).unwrap();
            let matching = grid_delta4_matching(m, n).unwrap();
            let report = verify_matching(&c, &matching).unwrap();
            assert!(report.valid && report.acyclic, "{m}x{n}");
            let profile = homology_profile(&c, false).unwrap();
            assert_eq!(report.signed_critical_count(), profile.euler_reduced);
            let top = (m * n - 5) as isize;
            let critical = report.critical_by_dim.get(&top).copied().unwrap_or(0) as u64;
            assert_eq!(report.critical_by_dim.len(), usize::from(critical > 0));
            let expected: BTreeMap<isize, u64> = if critical > 0 {
                BTreeMap::from([(top, critical)])
            } else {
                BTreeMap::new()
            };
            assert_eq!(profile.betti, expected);
        }
    }

    #[test]
    fn a_triangle_boundary_cycle_is_found() {
        let c = Complex::from_facets(
            3,
            [
                VertexSet::from([1, 2]),
                VertexSet::from([1, 3]),
                VertexSet::from([2, 3]),
            ],
        )
        .unwrap();
        let m = MorseMatching {
            pairs: vec![
                (VertexSet::from([1]), VertexSet::from([1, 2])),
                (VertexSet::from([2]), VertexSet::from([2, 3])),
                (VertexSet::from([3]), VertexSet::from([1, 3])),
            ],
            critical: vec![VertexSet::EMPTY],
        };
        let report = verify_matching(&c, &m).unwrap();
        assert!(report.valid);
        assert!(!report.acyclic);
        assert_eq!(report.cycle.unwrap().len(), 6);
    }

    /// A cycle needs at least three pairs: two pairs sharing both lower faces
    /// would share their upper face. Re-pairing the vertices and edges of a
    /// triangle inside the grid matching closes one while staying valid.
    #[test]
    fn corrupted_grid_matching_has_a_cycle() {
        let (m, n) = (2, 4);
        let c = grid_delta4(m, n).unwrap();
        let mut bad = grid_delta4_matching(m, n).unwrap();
        let triangle = [2, 3, 4];
        let mut replaced = Vec::new();
        for (i, &a) in triangle.iter().enumerate() {
            let b = triangle[(i + 1) % 3];
            replaced.push((VertexSet::from([a]), VertexSet::from([a, b])));
            replaced.push((VertexSet::from([1, a]), VertexSet::from([1, a, b])));
        }
        let touched: HashSet<VertexSet> = replaced.iter().flat_map(|&(x, y)| [x, y]).collect();
        let freed: Vec<VertexSet> = bad
            .pairs
            .iter()
            .flat_map(|&(x, y)| [x, y])
            .filter(|f| !touched.contains(f))
            .collect();
        bad.pairs.retain(|(x, y)| !touched.contains(x) && !touched.contains(y));
        let orphans: Vec<VertexSet> = freed
            .into_iter()
            .filter(|f| !bad.pairs.iter().any(|(x, y)| x == f || y == f))
            .collect();
        bad.critical.extend(orphans);
        bad.pairs.extend(replaced);
        let report = verify_matching(&c, &bad).unwrap();
        assert!(report.valid, "{:?}", report.issues);
        let cycle = report.cycle.expect("a cycle");
        assert!(cycle.len() >= 6);
    }

    #[test]
    fn invalid_and_foreign_matchings() {
        let c = grid_delta4(2, 3).unwrap();
        let mut m = grid_delta4_matching(2, 3).unwrap();
        let extra = m.pairs[0].0;
        m.critical.push(extra);
        let report = verify_matching(&c, &m).unwrap();
        assert!(!report.valid);
        m.critical.push(VertexSet::full(6));
        assert!(matches!(verify_matching(&c, &m), Err(Error::NotAFace(_))));
    }

    #[test]
    fn s_pieces_turn_into_l_pieces() {
        for (m, n) in [(3, 3), (3, 4), (4, 4), (2, 5)] {
            let near = grid_delta4_near_facets(m, n).unwrap();
            let shapes: HashMap<VertexSet, Shape> = near.iter().map(|(s, t)| (*s, t.shape)).collect();
            for (sigma, t) in near.iter().filter(|(_, t)| t.shape == Shape::S) {
                let x = t.frame_cell(1, 2).unwrap();
                let x = grid_vertex(n, x.0, x.1);
                let y = grid_vertex(n, t.y.0, t.y.1);
                assert!(sigma.contains(x));
                let next = sigma.with(y).without(x);
                assert_eq!(shapes.get(&next), Some(&Shape::L), "{m}x{n} {sigma}");
            }
        }
    }
}
