//! Betti numbers of cut complexes of squared paths, proven and conjectural.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::poly::binomial;
use crate::vertex_set::VertexSet;

/// Predicted top Betti number of `Δ_k(P²_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum SquaredPathBetti {
    /// Backed by a proof.
    Exact(u64),
    /// Only supported by a conjectured formula or recurrence.
    Conjectural(u64),
    /// No formula applies.
    Unknown,
}

impl SquaredPathBetti {
    pub fn value(self) -> Option<u64> {
        match self {
            SquaredPathBetti::Exact(v) | SquaredPathBetti::Conjectural(v) => Some(v),
            SquaredPathBetti::Unknown => None,
        }
    }
}

fn exact(k: i64, n: i64) -> Option<i64> {
    if n == k + 2 {
        Some(0)
    } else if n == k + 3 {
        Some(binomial(k - 1, 2))
    } else if k == 3 {
        Some(binomial(n - 4, 2))
    } else {
        None
    }
}

fn conjectured_polynomial(k: i64, n: i64) -> Option<i64> {
    match k {
        4 if n >= 7 => {
            let t = n - 7;
            Some(3 + 8 * t + 6 * binomial(t, 2) + binomial(t, 3))
        }
        5 if n >= 8 => {
            let t = n - 8;
            Some(6 + 20 * t + 21 * binomial(t, 2) + 7 * binomial(t, 3) + binomial(t, 4))
        }
        _ => None,
    }
}

/// `β(k, k+r) = Σ_{i=1}^{r} (-1)^{i-1} C(r, i) β(k-i, k-i+r)` for `k >= r + 3`,
/// with the earlier terms taken from `lookup`.
pub fn squared_path_recurrence(k: usize, n: usize, lookup: impl Fn(usize, usize) -> Option<i64>) -> Option<i64> {
    let r = n.checked_sub(k)?;
    if r < 3 || k < r + 3 {
        return None;
    }
    let mut total = 0i64;
    for i in 1..=r {
        let term = binomial(r as i64, i as i64) * lookup(k - i, n - i)?;
        total += if i % 2 == 1 { term } else { -term };
    }
    Some(total)
}

fn predicted(k: i64, n: i64) -> Option<(i64, bool)> {
    if let Some(v) = exact(k, n) {
        return Some((v, true));
    }
    if let Some(v) = conjectured_polynomial(k, n) {
        return Some((v, false));
    }
    squared_path_recurrence(k as usize, n as usize, |a, b| {
        predicted(a as i64, b as i64).map(|p| p.0)
    })
    .map(|v| (v, false))
}

/// Top Betti number of `Δ_k(P²_n)` for `k >= 3`, `n >= k + 2`.
///
/// Proven cases are `n = k + 2`, `n = k + 3` and `k = 3`. Otherwise the
/// conjectured polynomials for `k = 4, 5` and the diagonal recurrence are
/// tried, in that order.
pub fn squared_path_betti(k: usize, n: usize) -> Result<SquaredPathBetti> {
    if k < 3 || n < k + 2 {
        return Err(invalid(format!("need k >= 3 and n >= k + 2, got k={k}, n={n}")));
    }
    Ok(match predicted(k as i64, n as i64) {
        Some((v, true)) => SquaredPathBetti::Exact(v as u64),
        Some((v, false)) => SquaredPathBetti::Conjectural(v as u64),
        None => SquaredPathBetti::Unknown,
    })
}

/// Betti number of `Δ₃(G)` for a generalized wedge `G` over `(a, b)`:
/// every edge lies inside `a` or inside `b`, `G[b]` is a triangle and
/// `G[a ∩ b]` an edge. `beta_a` is the Betti number of the shellable `Δ₃(G[a])`.
/// The result adds the vertices of `a` with no neighbour in `b`.
pub fn gen_wedge_delta3_betti(graph: &Graph, a: VertexSet, b: VertexSet, beta_a: u64) -> Result<u64> {
    if a.union(b) != graph.vertices() {
        return Err(invalid("the two parts must cover the vertex set"));
    }
    if let Some(&(u, v)) = graph.edges().iter().find(|&&(u, v)| {
        let pair = VertexSet::from([u, v]);
        !pair.is_subset(a) && !pair.is_subset(b)
    }) {
        return Err(invalid(format!("edge {u}-{v} crosses the partition")));
    }
    let is_clique = |s: VertexSet| {
        let members = s.to_vec();
        members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| graph.has_edge(u, v)))
    };
    if b.len() != 3 || !is_clique(b) {
        return Err(invalid("the second part must induce a triangle"));
    }
    let shared = a.intersection(b);
    if shared.len() != 2 || !is_clique(shared) {
        return Err(invalid("the parts must share exactly one edge"));
    }
    let gamma = a
        .difference(b)
        .iter()
        .filter(|&v| graph.neighbors(v).intersection(b).is_empty())
        .count();
    Ok(beta_a + gamma as u64)
}
