//! Exact linear algebra on sparse integer matrices.
//!
//! Two independent routes are provided. [`rank_over_rationals`] performs
//! fraction-free elimination and reports the rank over ℚ. [`smith_form`]
//! diagonalises over ℤ with unimodular operations and reports the rank together
//! with the invariant factors. Both start in `i64` with checked arithmetic and
//! switch to arbitrary precision on overflow.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A sparse integer matrix stored by columns, each sorted by row index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, columns: Vec<Vec<(u32, i64)>>) -> SparseMatrix {
        let columns = columns
            .into_iter()
            .map(|mut c| {
                c.retain(|&(_, v)| v != 0);
                c.sort_unstable_by_key(|&(r, _)| r);
                debug_assert!(c.iter().all(|&(r, _)| (r as usize) < rows));
                c
            })
            .collect();
        SparseMatrix { rows, columns }
    }

    pub fn zero(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> SparseMatrix {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let columns = (0..cols)
            .map(|c| {
                (0..rows)
                    .filter(|&r| dense[r][c] != 0)
                    .map(|r| (r as u32, dense[r][c]))
                    .collect()
            })
            .collect();
        SparseMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, c: usize) -> &[(u32, i64)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                d[r as usize][c] = v;
            }
        }
        d
    }

    /// Product `self · other`, used to check that boundaries compose to zero.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows, "dimension mismatch");
        let columns = other
            .columns
            .iter()
            .map(|oc| {
                let mut acc: HashMap<u32, i64> = HashMap::new();
                for &(k, b) in oc {
                    for &(r, a) in &self.columns[k as usize] {
                        *acc.entry(r).or_insert(0) += a * b;
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        SparseMatrix::new(self.rows, columns)
    }
}

/// Integer types usable by the fraction-free elimination.
trait Exact: Clone + PartialEq + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `a·x - b·y`, or `None` on overflow.
    fn lin(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl Exact for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn lin(a: &i64, x: &i64, b: &i64, y: &i64) -> Option<i64> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &i64) -> i64 {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &i64) -> i64 {
        self / d
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Exact for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn lin(a: &BigInt, x: &BigInt, b: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &BigInt) -> BigInt {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &BigInt) -> BigInt {
        self / d
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

struct Overflow;

/// Rank over ℚ by fraction-free elimination of the columns.
pub fn rank_over_rationals(m: &SparseMatrix) -> usize {
    match eliminate::<i64>(m.columns.iter().cloned()) {
        Ok(rank) => rank,
        Err(Overflow) => eliminate::<BigInt>(
            m.columns
                .iter()
                .map(|c| c.iter().map(|&(r, v)| (r, BigInt::from(v))).collect()),
        )
        .unwrap_or_else(|_| unreachable!("bignum elimination cannot overflow")),
    }
}

fn eliminate<T: Exact>(columns: impl Iterator<Item = Vec<(u32, T)>>) -> Result<usize, Overflow> {
    // Pivot vectors keyed by their leading (largest) row index.
    let mut pivots: HashMap<u32, Vec<(u32, T)>> = HashMap::new();
    for mut v in columns {
        while let Some((lead, lead_val)) = v.last().cloned() {
            match pivots.get(&lead) {
                Some(p) => {
                    let p_lead = &p.last().unwrap().1;
                    let g = p_lead.gcd(&lead_val);
                    let a = p_lead.div_exact(&g);
                    let b = lead_val.div_exact(&g);
                    v = combine(&a, &v, &b, p)?;
                    normalize(&mut v);
                }
                None => {
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    Ok(pivots.len())
}

/// `a·x - b·y` for sparse vectors sorted by index.
fn combine<T: Exact>(a: &T, x: &[(u32, T)], b: &T, y: &[(u32, T)]) -> Result<Vec<(u32, T)>, Overflow> {
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (idx, xv, yv) = match (x.get(i), y.get(j)) {
            (Some(p), Some(q)) if p.0 == q.0 => {
                i += 1;
                j += 1;
                (p.0, &p.1, &q.1)
            }
            (Some(p), Some(q)) if p.0 < q.0 => {
                i += 1;
                (p.0, &p.1, &zero)
            }
            (Some(p), None) => {
                i += 1;
                (p.0, &p.1, &zero)
            }
            (_, Some(q)) => {
                j += 1;
                (q.0, &zero, &q.1)
            }
            (None, None) => unreachable!(),
        };
        let val = T::lin(a, xv, b, yv).ok_or(Overflow)?;
        if !val.is_zero() {
            out.push((idx, val));
        }
    }
    Ok(out)
}

fn normalize<T: Exact>(v: &mut [(u32, T)]) {
    let Some(first) = v.first() else { return };
    let mut g = first.1.clone();
    for (_, x) in v.iter().skip(1) {
        if g.is_one() {
            return;
        }
        g = g.gcd(x);
    }
    if !g.is_one() && !g.is_zero() {
        for (_, x) in v.iter_mut() {
            *x = x.div_exact(&g);
        }
    }
}

/// Result of diagonalising an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<BigInt>,
}

/// Diagonalise over ℤ: unit pivots are eliminated sparsely, the remainder densely.
pub fn smith_form(m: &SparseMatrix) -> SmithForm {
    let mut state = SparseState::from_matrix(m);
    let sparse_rank = match state.eliminate_units() {
        Ok(r) | Err((r, Overflow)) => r,
    };
    let mut diag = dense_smith_diagonal(state.into_dense());
    diag.retain(|d| !Zero::is_zero(d));
    let rank = sparse_rank + diag.len();
    let torsion = invariant_factors(diag)
        .into_iter()
        .filter(|d| !One::is_one(d))
        .collect();
    SmithForm { rank, torsion }
}

struct SparseState {
    rows: HashMap<u32, HashMap<u32, i64>>,
    col_rows: HashMap<u32, HashSet<u32>>,
}

impl SparseState {
    fn from_matrix(m: &SparseMatrix) -> SparseState {
        let mut rows: HashMap<u32, HashMap<u32, i64>> = HashMap::new();
        let mut col_rows: HashMap<u32, HashSet<u32>> = HashMap::new();
        for (c, col) in m.columns.iter().enumerate() {
            for &(r, v) in col {
                rows.entry(r).or_default().insert(c as u32, v);
                col_rows.entry(c as u32).or_default().insert(r);
            }
        }
        SparseState { rows, col_rows }
    }

    fn find_unit_pivot(&self) -> Option<(u32, u32)> {
        let mut best: Option<(usize, u32, u32)> = None;
        for (&c, rs) in &self.col_rows {
            for &r in rs {
                let row = &self.rows[&r];
                if row[&c].abs() == 1 {
                    let cost = (row.len() - 1) * (rs.len() - 1);
                    if best.is_none_or(|(b, br, bc)| (cost, r, c) < (b, br, bc)) {
                        best = Some((cost, r, c));
                    }
                }
            }
            if best.is_some_and(|(b, _, _)| b == 0) {
                break;
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    /// Eliminate unit pivots until none remain; returns how many were used.
    ///
    /// On overflow the pivot in progress is restored, so the state stays
    /// equivalent to the input and can be finished densely.
    fn eliminate_units(&mut self) -> Result<usize, (usize, Overflow)> {
        let mut count = 0;
        while let Some((pr, pc)) = self.find_unit_pivot() {
            let pivot_row = self.rows.remove(&pr).unwrap();
            for c in pivot_row.keys() {
                self.col_rows.get_mut(c).unwrap().remove(&pr);
            }
            let s = pivot_row[&pc];
            let others: Vec<u32> = self.col_rows[&pc].iter().copied().collect();
            for r in others {
                let row = &self.rows[&r];
                let factor = row[&pc] * s;
                let updates: Option<Vec<(u32, i64)>> = pivot_row
                    .iter()
                    .map(|(&c, &v)| {
                        let cur = row.get(&c).copied().unwrap_or(0);
                        Some((c, cur.checked_sub(factor.checked_mul(v)?)?))
                    })
                    .collect();
                let Some(updates) = updates else {
                    for &c in pivot_row.keys() {
                        self.col_rows.entry(c).or_default().insert(pr);
                    }
                    self.rows.insert(pr, pivot_row);
                    return Err((count, Overflow));
                };
                let row = self.rows.get_mut(&r).unwrap();
                for (c, new) in updates {
                    if new == 0 {
                        row.remove(&c);
                        self.col_rows.get_mut(&c).unwrap().remove(&r);
                    } else {
                        row.insert(c, new);
                        self.col_rows.entry(c).or_default().insert(r);
                    }
                }
                if row.is_empty() {
                    self.rows.remove(&r);
                }
            }
            for c in pivot_row.keys() {
                if self.col_rows.get(c).is_some_and(HashSet::is_empty) {
                    self.col_rows.remove(c);
                }
            }
            count += 1;
        }
        Ok(count)
    }

    fn into_dense(self) -> Vec<Vec<BigInt>> {
        let mut row_ids: Vec<u32> = self.rows.keys().copied().collect();
        row_ids.sort_unstable();
        let mut col_ids: Vec<u32> = self.col_rows.keys().copied().collect();
        col_ids.sort_unstable();
        let col_pos: HashMap<u32, usize> = col_ids.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        row_ids
            .iter()
            .map(|r| {
                let mut dense = vec![BigInt::zero(); col_ids.len()];
                for (c, &v) in &self.rows[r] {
                    dense[col_pos[c]] = BigInt::from(v);
                }
                dense
            })
            .collect()
    }
}

/// Diagonal entries (absolute values) of a diagonal form reached by unimodular operations.
fn dense_smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry in the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !Zero::is_zero(x) && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return diag;
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if Zero::is_zero(&a[i][t]) {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                for j in t..cols {
                    let delta = &q * &a[t][j];
                    a[i][j] -= delta;
                }
                clean &= Zero::is_zero(&a[i][t]);
            }
            for j in t + 1..cols {
                if Zero::is_zero(&a[t][j]) {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for i in t..rows {
                    let delta = &q * &a[i][t];
                    a[i][j] -= delta;
                }
                clean &= Zero::is_zero(&a[t][j]);
            }
            if clean {
                diag.push(p.abs());
                break;
            }
        }
    }
    diag
}

/// Turn a diagonal into a divisibility chain with the same product structure.
fn invariant_factors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = Integer::gcd(&d[i], &d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Convert an invariant factor to `u64` for reporting.
pub fn factor_to_u64(d: &BigInt) -> Option<u64> {
    d.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Rank over the rationals by dense Gaussian elimination with exact fractions.
    fn rank_oracle(dense: &[Vec<i64>]) -> usize {
        use num_rational::BigRational;
        let mut a: Vec<Vec<BigRational>> = dense
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
            .collect();
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in 0..rows {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[rank][c];
                    for j in 0..cols {
                        let delta = &f * &a[rank][j];
                        a[r][j] -= delta;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn torsion_of_small_examples() {
        let m = SparseMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        let s = smith_form(&m);
        assert_eq!(s.rank, 2);
        assert_eq!(s.torsion, vec![BigInt::from(6)]);
        let m = SparseMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_form(&m);
        assert_eq!(s.rank, 3);
        assert_eq!(s.torsion, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        assert_eq!(rank_over_rationals(&m), 3);
    }

    #[test]
    fn large_entries_fall_back_to_bignums() {
        let big = i64::MAX / 3;
        let m = SparseMatrix::from_dense(&[vec![big, 7], vec![5, big], vec![3, 11]]);
        assert_eq!(rank_over_rationals(&m), 2);
        assert_eq!(smith_form(&m).rank, 2);
    }

    #[test]
    fn empty_shapes() {
        assert_eq!(rank_over_rationals(&SparseMatrix::zero(0, 3)), 0);
        assert_eq!(smith_form(&SparseMatrix::zero(4, 0)).rank, 0);
    }

    proptest! {
        #[test]
        fn ranks_agree(rows in 1usize..7, cols in 1usize..7,
                       data in proptest::collection::vec(-3i64..4, 49)) {
            let dense: Vec<Vec<i64>> =
                (0..rows).map(|r| (0..cols).map(|c| data[r * 7 + c]).collect()).collect();
            let m = SparseMatrix::from_dense(&dense);
            let expected = rank_oracle(&dense);
            prop_assert_eq!(rank_over_rationals(&m), expected);
            prop_assert_eq!(smith_form(&m).rank, expected);
        }

        #[test]
        fn torsion_product_matches_determinant(data in proptest::collection::vec(-4i64..5, 9)) {
            let dense: Vec<Vec<i64>> = (0..3).map(|r| data[r * 3..r * 3 + 3].to_vec()).collect();
            let det = dense[0][0] * (dense[1][1] * dense[2][2] - dense[1][2] * dense[2][1])
                - dense[0][1] * (dense[1][0] * dense[2][2] - dense[1][2] * dense[2][0])
                + dense[0][2] * (dense[1][0] * dense[2][1] - dense[1][1] * dense[2][0]);
            let s = smith_form(&SparseMatrix::from_dense(&dense));
            if det != 0 {
                let prod: BigInt = s.torsion.iter().product();
                prop_assert_eq!(prod, BigInt::from(det.abs()));
                for w in s.torsion.windows(2) {
                    prop_assert!(Zero::is_zero(&(&w[1] % &w[0])));
                }
            } else {
                prop_assert!(s.rank < 3);
            }
        }
    }
}
