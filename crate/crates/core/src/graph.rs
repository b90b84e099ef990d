//! Simple graphs on `{1, ..., n}` with the named families used throughout the crate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::perm::Permutation;
use crate::vertex_set::{k_subsets, VertexSet, MAX_VERTICES};

/// A named graph family, as accepted by [`make_family`].
///
/// The textual form round-trips through [`FromStr`] and [`fmt::Display`]:
/// `path:5`, `cycle:6`, `squared-path:7`, `grid:3x4`, `complete:3`,
/// `edgeless:4`, `union(path:3,complete:2)`, `join(edgeless:2,cycle:4)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Family {
    Path(usize),
    Cycle(usize),
    SquaredPath(usize),
    Grid(usize, usize),
    Complete(usize),
    Edgeless(usize),
    DisjointUnion(Box<Family>, Box<Family>),
    Join(Box<Family>, Box<Family>),
}

impl Family {
    pub fn vertex_count(&self) -> usize {
        match self {
            Family::Path(n) | Family::Cycle(n) | Family::SquaredPath(n) | Family::Complete(n) | Family::Edgeless(n) => {
                *n
            }
            Family::Grid(m, n) => m * n,
            Family::DisjointUnion(a, b) | Family::Join(a, b) => a.vertex_count() + b.vertex_count(),
        }
    }

    pub fn union(a: Family, b: Family) -> Family {
        Family::DisjointUnion(Box::new(a), Box::new(b))
    }

    pub fn join(a: Family, b: Family) -> Family {
        Family::Join(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::SquaredPath(n) => write!(f, "squared-path:{n}"),
            Family::Grid(m, n) => write!(f, "grid:{m}x{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Edgeless(n) => write!(f, "edgeless:{n}"),
            Family::DisjointUnion(a, b) => write!(f, "union({a},{b})"),
            Family::Join(a, b) => write!(f, "join({a},{b})"),
        }
    }
}

impl From<Family> for String {
    fn from(f: Family) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for Family {
    type Error = Error;
    fn try_from(s: String) -> Result<Family> {
        s.parse()
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        let s = s.trim();
        for (prefix, ctor) in [
            ("union(", Family::union as fn(Family, Family) -> Family),
            ("join(", Family::join),
        ] {
            if let Some(body) = s.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')) {
                let split =
                    top_level_comma(body).ok_or_else(|| Error::Parse(format!("expected two operands in `{s}`")))?;
                return Ok(ctor(body[..split].parse()?, body[split + 1..].parse()?));
            }
        }
        let (name, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `name:size` in `{s}`")))?;
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("`{t}`: {e}")))
        };
        Ok(match name.trim() {
            "path" => Family::Path(num(arg)?),
            "cycle" => Family::Cycle(num(arg)?),
            "squared-path" => Family::SquaredPath(num(arg)?),
            "complete" => Family::Complete(num(arg)?),
            "edgeless" => Family::Edgeless(num(arg)?),
            "grid" => {
                let (m, n) = arg
                    .split_once('x')
                    .ok_or_else(|| Error::Parse(format!("expected `grid:MxN`, got `{s}`")))?;
                Family::Grid(num(m)?, num(n)?)
            }
            other => return Err(Error::Parse(format!("unknown family `{other}`"))),
        })
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// An undirected simple graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
    label: Option<String>,
}

impl Graph {
    /// Build from an edge list. Edges are normalised to `(min, max)` and sorted.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "at most {MAX_VERTICES} vertices supported"
            )));
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) outside 1..={n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if adj[u - 1].contains(v) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u},{v})")));
            }
            adj[u - 1].insert(v);
            adj[v - 1].insert(u);
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        Ok(Graph {
            n,
            adj,
            edges: norm,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Graph {
        self.label = Some(label.into());
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v - 1]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u - 1].contains(v)
    }

    /// Whether the induced subgraph on `s` is connected. Errors on the empty set.
    pub fn is_connected_induced(&self, s: VertexSet) -> Result<bool> {
        if s.is_empty() {
            return Err(invalid("connectivity of the empty vertex set is undefined"));
        }
        Ok(self.component_of(s.min().unwrap(), s) == s)
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_of(1, self.vertices()) == self.vertices()
    }

    /// Vertices of `within` reachable from `start` inside `G[within]`.
    pub fn component_of(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut reached = VertexSet::singleton(start);
        let mut frontier = reached;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.adj[v - 1]);
            }
            frontier = next.intersection(within).difference(reached);
            reached = reached.union(frontier);
        }
        reached
    }

    /// Connected components of `G[s]`, ordered by smallest vertex.
    pub fn components(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut rest = s;
        let mut out = Vec::new();
        while let Some(v) = rest.min() {
            let c = self.component_of(v, s);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }

    /// Connected `k`-subsets in lexicographic order.
    pub fn connected_k_subsets(&self, k: usize) -> Vec<VertexSet> {
        if k == 0 {
            return Vec::new();
        }
        k_subsets(self.n, k)
            .filter(|&s| self.component_of(s.min().unwrap(), s) == s)
            .collect()
    }

    /// Vertex sets of induced cycles of length `len`, in lexicographic order.
    pub fn induced_cycles(&self, len: usize) -> Result<Vec<VertexSet>> {
        if len < 3 {
            return Err(invalid("induced cycles need length at least 3"));
        }
        Ok(k_subsets(self.n, len).filter(|&s| self.is_induced_cycle(s)).collect())
    }

    pub fn is_induced_cycle(&self, s: VertexSet) -> bool {
        s.len() >= 3
            && s.iter().all(|v| self.adj[v - 1].intersection(s).len() == 2)
            && self.component_of(s.min().unwrap(), s) == s
    }

    /// Vertex sets of size `len` whose induced subgraph has a spanning cycle.
    ///
    /// Unlike [`Graph::induced_cycles`], chords are allowed: in a grid the six
    /// vertices of a 2x3 block form such a set.
    pub fn cycle_sets(&self, len: usize) -> Result<Vec<VertexSet>> {
        if len < 3 {
            return Err(invalid("cycles need length at least 3"));
        }
        Ok(k_subsets(self.n, len).filter(|&s| self.has_spanning_cycle(s)).collect())
    }

    /// Whether `G[s]` is Hamiltonian, by dynamic programming over subsets of `s`.
    pub fn has_spanning_cycle(&self, s: VertexSet) -> bool {
        let members = s.to_vec();
        let l = members.len();
        if l < 3 || s.iter().any(|v| self.adj[v - 1].intersection(s).len() < 2) {
            return false;
        }
        // reach[mask] = set of end positions of paths from members[0] covering mask.
        let mut reach = vec![0u32; 1 << l];
        reach[1] = 1;
        for mask in 1usize..(1 << l) {
            if mask & 1 == 0 || reach[mask] == 0 {
                continue;
            }
            for end in 0..l {
                if reach[mask] & (1 << end) == 0 {
                    continue;
                }
                for next in 1..l {
                    if mask & (1 << next) == 0 && self.has_edge(members[end], members[next]) {
                        reach[mask | (1 << next)] |= 1 << next;
                    }
                }
            }
        }
        let full = (1usize << l) - 1;
        (1..l).any(|end| reach[full] & (1 << end) != 0 && self.has_edge(members[end], members[0]))
    }

    /// Chordality via maximum cardinality search and a perfect elimination check.
    pub fn is_chordal(&self) -> bool {
        let order = self.maximum_cardinality_order();
        // `order` lists vertices in visit order; its reverse is a candidate
        // perfect elimination ordering.
        let mut position = vec![0usize; self.n + 1];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        for &v in &order {
            let earlier: Vec<usize> = self.adj[v - 1].iter().filter(|&u| position[u] < position[v]).collect();
            let Some(&parent) = earlier.iter().max_by_key(|&&u| position[u]) else {
                continue;
            };
            let rest: VertexSet = earlier.iter().copied().filter(|&u| u != parent).collect();
            if !rest.is_subset(self.adj[parent - 1]) {
                return false;
            }
        }
        true
    }

    fn maximum_cardinality_order(&self) -> Vec<usize> {
        let mut weight = vec![0usize; self.n + 1];
        let mut visited = VertexSet::EMPTY;
        let mut order = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let v = (1..=self.n)
                .filter(|&v| !visited.contains(v))
                .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
                .unwrap();
            visited.insert(v);
            order.push(v);
            for u in self.adj[v - 1].difference(visited) {
                weight[u] += 1;
            }
        }
        order
    }

    /// Chordality by searching for an induced cycle of length at least 4.
    pub fn is_chordal_by_cycles(&self) -> bool {
        (4..=self.n).all(|len| k_subsets(self.n, len).all(|s| !self.is_induced_cycle(s)))
    }

    /// Whether some vertex of `s` disconnects `G[s]` when removed.
    ///
    /// Requires `G[s]` connected with at least three vertices.
    pub fn cut_vertex_exists(&self, s: VertexSet) -> Result<bool> {
        if s.len() < 3 || !self.is_connected_induced(s)? {
            return Err(invalid("cut vertex test needs a connected set of at least 3 vertices"));
        }
        Ok(s.iter().any(|v| !self.is_connected_induced(s.without(v)).unwrap()))
    }

    /// The induced subgraph on `s`, relabelled to `1..=|s|` preserving order.
    pub fn induced_subgraph(&self, s: VertexSet) -> Graph {
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| s.contains(u) && s.contains(v))
            .map(|&(u, v)| (s.rank_of(u).unwrap() + 1, s.rank_of(v).unwrap() + 1))
            .collect();
        Graph::from_edges(s.len(), &edges).expect("induced subgraph is simple")
    }

    /// Whether `p` maps edges to edges.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.n && self.edges.iter().all(|&(u, v)| self.has_edge(p.apply(u), p.apply(v)))
    }

    /// Parse the plain edge-list format: a header `n <count>` and one `u v` per line.
    ///
    /// Blank lines and lines starting with `#` are ignored.
    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
        let n = header
            .strip_prefix('n')
            .map(str::trim)
            .and_then(|t| t.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("expected header `n <count>`, got `{header}`")))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
                _ => return Err(Error::Parse(format!("bad edge line `{line}`"))),
            }
        }
        Graph::from_edges(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let doc: GraphDoc = serde_json::from_str(text)?;
        let g = Graph::from_edges(doc.n, &doc.edges)?;
        Ok(match doc.label {
            Some(l) => g.with_label(l),
            None => g,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphDoc {
            n: self.n,
            edges: self.edges.clone(),
            label: self.label.clone(),
        })
        .expect("graph serialises")
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// Construct a member of a named family. Zero-vertex graphs are rejected.
pub fn make_family(family: &Family) -> Result<Graph> {
    let n = family.vertex_count();
    if n == 0 {
        return Err(Error::InvalidGraph(format!("{family} has no vertices")));
    }
    if n > MAX_VERTICES {
        return Err(Error::InvalidGraph(format!("{family} exceeds {MAX_VERTICES} vertices")));
    }
    let edges: Vec<(usize, usize)> = match family {
        Family::Path(n) => (1..*n).map(|i| (i, i + 1)).collect(),
        Family::Cycle(n) => {
            if *n < 3 {
                return Err(Error::InvalidGraph("cycles need at least 3 vertices".into()));
            }
            (1..*n).map(|i| (i, i + 1)).chain([(1, *n)]).collect()
        }
        Family::SquaredPath(n) => (1..*n)
            .map(|i| (i, i + 1))
            .chain((1..n.saturating_sub(1)).map(|i| (i, i + 2)))
            .collect(),
        Family::Grid(m, n) => {
            let id = |i: usize, j: usize| (i - 1) * n + j;
            let mut e = Vec::new();
            for i in 1..=*m {
                for j in 1..=*n {
                    if j < *n {
                        e.push((id(i, j), id(i, j + 1)));
                    }
                    if i < *m {
                        e.push((id(i, j), id(i + 1, j)));
                    }
                }
            }
            e
        }
        Family::Complete(n) => (1..=*n).flat_map(|u| (u + 1..=*n).map(move |v| (u, v))).collect(),
        Family::Edgeless(_) => Vec::new(),
        Family::DisjointUnion(a, b) | Family::Join(a, b) => {
            let (ga, gb) = (make_family(a)?, make_family(b)?);
            let shift = ga.vertex_count();
            let mut e: Vec<_> = ga.edges().to_vec();
            e.extend(gb.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
            if matches!(family, Family::Join(..)) {
                for u in 1..=shift {
                    for v in shift + 1..=n {
                        e.push((u, v));
                    }
                }
            }
            e
        }
    };
    Ok(Graph::from_edges(n, &edges)?.with_label(family.to_string()))
}

/// Grid coordinates `(row, col)` (both 1-based) of a vertex of `G(m, n)`.
pub fn grid_coords(n_cols: usize, v: usize) -> (usize, usize) {
    ((v - 1) / n_cols + 1, (v - 1) % n_cols + 1)
}

/// Vertex of `G(m, n)` at `(row, col)`.
pub fn grid_vertex(n_cols: usize, row: usize, col: usize) -> usize {
    (row - 1) * n_cols + col
}

/// Named symmetries of paths and cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    /// `i ↦ n + 1 - i` on a path.
    PathFlip,
    /// `i ↦ i + 1 (mod n)` on a cycle.
    CycleRotation,
    /// `(1 n)(2 n-1)…` on an even cycle.
    EvenReflection,
    /// `(1 n-1)(2 n-2)…` fixing `n` and `n/2`, on an even cycle.
    EvenReflectionThroughVertices,
    /// `(1 n-1)(2 n-2)…` fixing `n`, on an odd cycle.
    OddReflection,
}

/// A named automorphism of `path:n` or `cycle:n`.
pub fn graph_automorphism(family: &Family, which: Symmetry) -> Result<Permutation> {
    let (n, is_cycle) = match family {
        Family::Path(n) => (*n, false),
        Family::Cycle(n) => (*n, true),
        _ => return Err(invalid("named automorphisms exist for paths and cycles only")),
    };
    let images: Vec<usize> = match (which, is_cycle) {
        (Symmetry::PathFlip, false) => (1..=n).map(|i| n + 1 - i).collect(),
        (Symmetry::CycleRotation, true) => (1..=n).map(|i| i % n + 1).collect(),
        (Symmetry::EvenReflection, true) if n % 2 == 0 => (1..=n).map(|i| n + 1 - i).collect(),
        (Symmetry::EvenReflectionThroughVertices, true) if n % 2 == 0 => {
            (1..=n).map(|i| if i == n { n } else { n - i }).collect()
        }
        (Symmetry::OddReflection, true) if n % 2 == 1 => (1..=n).map(|i| if i == n { n } else { n - i }).collect(),
        _ => return Err(invalid(format!("{which:?} is not defined for {family}"))),
    };
    Permutation::from_images(images)
}
