//! Characters of the symmetry groups acting on the homology of cut complexes
//! of paths, cycles and unions of two cliques.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::perm::{Partition, Permutation};

/// Irreducible character `χ^λ(μ)` of the symmetric group, by the
/// Murnaghan-Nakayama rule on beta-sets.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.size() != mu.size() {
        return Err(invalid(format!("{lambda} and {mu} have different sizes")));
    }
    let len = lambda.parts().len();
    let beads: Vec<usize> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    Ok(remove_rim_hooks(beads, mu.parts()))
}

/// Removes a rim hook for each part of `mu` in turn; a bead sliding from `b`
/// to `b - r` contributes `(-1)` per bead it jumps over.
fn remove_rim_hooks(beads: Vec<usize>, mu: &[usize]) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let mut total = 0;
    for &b in &beads {
        if b < r || beads.contains(&(b - r)) {
            continue;
        }
        let jumped = beads.iter().filter(|&&c| b - r < c && c < b).count();
        let moved: Vec<usize> = beads.iter().map(|&c| if c == b { b - r } else { c }).collect();
        let value = remove_rim_hooks(moved, rest);
        total += if jumped % 2 == 0 { value } else { -value };
    }
    total
}

/// `χ^(k, 1^(n-k))(μ)`.
pub fn hook_character(n: usize, k: usize, mu: &Partition) -> Result<i64> {
    if !(1..=n).contains(&k) {
        return Err(invalid(format!("hook arm {k} out of range for n = {n}")));
    }
    character(&Partition::hook(n, k), mu)
}

/// Elements of the automorphism group `{1, i ↦ n+1-i}` of a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathElement {
    Identity,
    Flip,
}

impl PathElement {
    pub fn permutation(self, n: usize) -> Permutation {
        let images = match self {
            PathElement::Identity => (1..=n).collect(),
            PathElement::Flip => (1..=n).rev().collect(),
        };
        Permutation::from_images(images).expect("valid images")
    }
}

fn sign_pow(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Character of the path automorphisms on the homology of `Δ_k(P_n)`, `2 <= k <= n - 2`.
pub fn character_path(n: usize, k: usize, g: PathElement) -> Result<i64> {
    if k < 2 || k + 2 > n {
        return Err(invalid(format!("need 2 <= k <= n - 2, got k={k}, n={n}")));
    }
    let hook = hook_character(n, k, &g.permutation(n).cycle_type())?;
    let d = n - k;
    Ok(match g {
        PathElement::Identity => hook - (d as i64 + 1),
        PathElement::Flip => {
            let correction = if d.is_multiple_of(2) { sign_pow(d / 2) } else { 0 };
            hook + sign_pow(d + 1) * correction
        }
    })
}

/// Elements of the dihedral group of order `2n` acting on `C_n`: rotations
/// `σ^j` with `σ(i) = i + 1 mod n`, and reflections `ρ σ^j` with `ρ(i) = n + 1 - i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DihedralElement {
    Rotation(usize),
    Reflection(usize),
}

impl DihedralElement {
    pub fn all(n: usize) -> impl Iterator<Item = DihedralElement> {
        (0..n)
            .map(DihedralElement::Rotation)
            .chain((0..n).map(DihedralElement::Reflection))
    }

    pub fn permutation(self, n: usize) -> Permutation {
        let rotate = |j: usize| (1..=n).map(move |i| (i - 1 + j) % n + 1);
        let images: Vec<usize> = match self {
            DihedralElement::Rotation(j) => rotate(j).collect(),
            DihedralElement::Reflection(j) => rotate(j).map(|v| n + 1 - v).collect(),
        };
        Permutation::from_images(images).expect("valid images")
    }
}

/// The `n`-dimensional character induced from a sign-like character `ψ` of `⟨h⟩`,
/// summed over the whole group.
fn induced_from_involution(n: usize, h: &Permutation, psi_h: i64, g: &Permutation) -> i64 {
    let doubled: i64 = DihedralElement::all(n)
        .map(|x| {
            let x = x.permutation(n);
            let conj = x.compose(g).compose(&x.inverse());
            if conj.is_identity() {
                1
            } else if &conj == h {
                psi_h
            } else {
                0
            }
        })
        .sum();
    doubled / 2
}

/// Character of the dihedral group on the homology of `Δ_k(C_n)`, `2 <= k <= n - 2`.
pub fn character_cycle(n: usize, k: usize, g: DihedralElement) -> Result<i64> {
    if k < 2 || k + 2 > n {
        return Err(invalid(format!("need 2 <= k <= n - 2, got k={k}, n={n}")));
    }
    if k == 2 {
        let rotation_sign = sign_pow(n - 1);
        let rotation = |j: usize| if j.is_multiple_of(2) { 1 } else { rotation_sign };
        let rho = if n.is_multiple_of(2) {
            sign_pow((n - 2) / 2)
        } else {
            sign_pow(n.div_ceil(2))
        };
        return Ok(match g {
            DihedralElement::Rotation(j) => rotation(j),
            DihedralElement::Reflection(j) => rho * rotation(j),
        });
    }
    let perm = g.permutation(n);
    let hook = hook_character(n, k, &perm.cycle_type())?;
    let through_n: Vec<usize> = (1..=n).map(|i| if i == n { n } else { n - i }).collect();
    // h fixes a facet of the minimal cut sets; it acts on that facet's
    // lower interval by this sign in every parity case.
    let h = if n.is_multiple_of(2) && k.is_multiple_of(2) {
        DihedralElement::Reflection(0).permutation(n)
    } else {
        Permutation::from_images(through_n).expect("valid images")
    };
    let psi_h = sign_pow((n - k) / 2);
    Ok(hook - induced_from_involution(n, &h, psi_h, &perm))
}

/// Character of `S_m × S_n` on the homology of `Δ_k(K_m ⊔ K_n)` at an element
/// with cycle types `(lambda_m, lambda_n)`.
pub fn character_clique_union(m: usize, n: usize, k: usize, lambda_m: &Partition, lambda_n: &Partition) -> Result<i64> {
    if lambda_m.size() != m || lambda_n.size() != n {
        return Err(invalid("cycle types must partition m and n"));
    }
    if k < 2 || k > m + n - 1 {
        return Err(invalid(format!("need 2 <= k < m + n, got k={k}")));
    }
    let mut value = hook_character(m + n, k, &lambda_m.concat(lambda_n))?;
    if m >= k {
        value -= hook_character(m, k, lambda_m)? * lambda_n.sign();
    }
    if n >= k {
        value -= lambda_m.sign() * hook_character(n, k, lambda_n)?;
    }
    Ok(value)
}
