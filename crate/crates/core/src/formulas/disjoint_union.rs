//! f- and h-polynomials and sphere counts for joins and disjoint unions.

use crate::poly::{binomial, Poly};

/// f-polynomial of `Δ_k(G₁ * G₂)` from those of `Δ_k(G₁)` and `Δ_k(G₂)`.
pub fn f_poly_join(f1: &Poly, f2: &Poly, n1: usize, n2: usize) -> Poly {
    &(&(&Poly::one_plus_x_pow(n2) * f1) + &(&Poly::one_plus_x_pow(n1) * f2)) - &(f1 * f2)
}

/// f-polynomial of `Δ_k(K_{n₁} + K_{n₂})`: a face is a set whose complement
/// has at least `k` vertices and meets both cliques.
pub fn f_poly_clique_union(n1: usize, n2: usize, k: usize) -> Poly {
    let total = n1 + n2;
    let mut coeffs = vec![0i64; total + 1];
    for j in k..=total {
        let (t, a, b, j) = (total as i64, n1 as i64, n2 as i64, j as i64);
        coeffs[(t - j) as usize] = binomial(t, j) - binomial(a, j) - binomial(b, j);
    }
    Poly::new(coeffs)
}

/// f-polynomial of `Δ_k(G₁ + G₂)`.
pub fn f_poly_disjoint_union(f1: &Poly, f2: &Poly, n1: usize, n2: usize, k: usize) -> Poly {
    &(&f1.shift(n2) + &f2.shift(n1)) + &f_poly_clique_union(n1, n2, k)
}

/// `Σ_{j=0}^{top} C(k-1+j, k-1) x^j`, the h-polynomial of a skeleton of a simplex.
fn skeleton_h(top: i64, k: usize) -> Poly {
    if top < 0 {
        return Poly::zero();
    }
    let k = k as i64;
    Poly::new((0..=top).map(|j| binomial(k - 1 + j, k - 1)).collect())
}

/// h-polynomial of `Δ_k(K_{n₁} + K_{n₂})`.
pub fn h_poly_clique_union(n1: usize, n2: usize, k: usize) -> Poly {
    let (a, b, kk) = (n1 as i64, n2 as i64, k as i64);
    if a + b < kk {
        return Poly::zero();
    }
    &(&skeleton_h(a + b - kk, k) - &skeleton_h(a - kk, k).shift(n2)) - &skeleton_h(b - kk, k).shift(n1)
}

/// The `k = 2` case of [`h_poly_clique_union`]: `(1 + … + x^{n₁-1})(1 + … + x^{n₂-1})`.
pub fn h_poly_clique_union_k2(n1: usize, n2: usize) -> Poly {
    let ones = |n: usize| Poly::new(vec![1; n]);
    &ones(n1) * &ones(n2)
}

/// h-polynomial of `Δ_k(G₁ + G₂)`; pass the zero polynomial for a void factor.
pub fn h_poly_disjoint_union(h1: &Poly, h2: &Poly, n1: usize, n2: usize, k: usize) -> Poly {
    let clique = if k == 2 {
        h_poly_clique_union_k2(n1, n2)
    } else {
        h_poly_clique_union(n1, n2, k)
    };
    &(&h1.shift(n2) + &h2.shift(n1)) + &clique
}

/// Number of spheres of `Δ_k(G₁ + G₂)` when both factors are shellable with
/// `w₁` and `w₂` spheres (0 when contractible or void).
pub fn wedge_count_disjoint_union(w1: u64, w2: u64, n1: usize, n2: usize, k: usize) -> u64 {
    let (a, b, kk) = (n1 as i64, n2 as i64, k as i64);
    let extra = binomial(a + b - 1, kk - 1) - binomial(a - 1, kk - 1) - binomial(b - 1, kk - 1);
    w1 + w2 + u64::try_from(extra).expect("sphere count is non-negative")
}

/// The single nonzero Betti number of `Δ_k(K_m + K_n)`, for `m + n > k >= 2`.
pub fn clique_union_betti(m: usize, n: usize, k: usize) -> u64 {
    wedge_count_disjoint_union(0, 0, m, n, k)
}
