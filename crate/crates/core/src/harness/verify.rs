//! Closed-form predictions compared with direct computation over parameter ranges.

use std::fmt::{self, Display};
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::catalog::seeded_random_graphs;
use super::Status;
use crate::complex::{cut_complex, Complex};
use crate::error::{Error, Result};
use crate::formulas::{
    character_clique_union, character_cycle, character_path, clique_union_betti, f_poly_disjoint_union, f_poly_join,
    face_lattice_condition, gen_wedge_delta3_betti, grid_betti_delta3, grid_connected4, grid_euler_predictions,
    grid_one_dim_prediction, grid_tau3, h_poly_disjoint_union, hook_character, squared_path_betti,
    wedge_count_disjoint_union, DihedralElement, LatticeMode, PathElement, SquaredPathBetti,
};
use crate::graph::{make_family, Family, Graph};
use crate::homology::{euler_characteristic_reduced, homology_profile, trace_on_homology, HomologyProfile};
use crate::perm::{Partition, Permutation};
use crate::poly::{binomial, Poly};
use crate::vertex_set::VertexSet;

/// One comparison of a predicted value with a computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub group: String,
    pub check: String,
    pub parameters: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

impl CheckRow {
    pub fn new(
        group: &str,
        check: &str,
        parameters: impl Display,
        expected: impl Display,
        computed: impl Display,
        status: Status,
    ) -> CheckRow {
        CheckRow {
            group: group.to_string(),
            check: check.to_string(),
            parameters: parameters.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            status,
        }
    }

    /// A row that passes exactly when the two values are equal.
    pub fn compare<T: PartialEq + fmt::Debug>(
        group: &str,
        check: &str,
        parameters: impl Display,
        expected: T,
        computed: T,
    ) -> CheckRow {
        let status = if expected == computed {
            Status::Pass
        } else {
            Status::Fail
        };
        CheckRow::new(
            group,
            check,
            parameters,
            format!("{expected:?}"),
            format!("{computed:?}"),
            status,
        )
    }
}

/// Families of formulas that `verify_formulas` knows how to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaFamily {
    DisjointUnion,
    SquaredPath,
    Grid,
    Characters,
}

impl FormulaFamily {
    pub const ALL: [FormulaFamily; 4] = [
        FormulaFamily::DisjointUnion,
        FormulaFamily::SquaredPath,
        FormulaFamily::Grid,
        FormulaFamily::Characters,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormulaFamily::DisjointUnion => "disjoint-union",
            FormulaFamily::SquaredPath => "squared-path",
            FormulaFamily::Grid => "grid",
            FormulaFamily::Characters => "characters",
        }
    }

    /// Range used by the verification suite.
    pub fn default_range(self) -> RangeInclusive<usize> {
        match self {
            FormulaFamily::DisjointUnion => 1..=5,
            FormulaFamily::SquaredPath => 5..=11,
            FormulaFamily::Grid => 2..=5,
            FormulaFamily::Characters => 4..=8,
        }
    }
}

impl Display for FormulaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<FormulaFamily> {
        FormulaFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown formula family `{s}`")))
    }
}

fn graph(f: Family) -> Result<Graph> {
    make_family(&f)
}

fn betti_sum(profile: &HomologyProfile) -> u64 {
    profile.betti.values().sum()
}

fn h_or_zero(c: &Complex) -> Result<Poly> {
    if c.is_void() {
        Ok(Poly::zero())
    } else {
        c.h_polynomial()
    }
}

/// `g1 + g2` or `g1 * g2` with the second factor shifted past the first.
pub fn glue(g1: &Graph, g2: &Graph, join: bool) -> Result<Graph> {
    let n1 = g1.vertex_count();
    let mut edges: Vec<(usize, usize)> = g1.edges().to_vec();
    edges.extend(g2.edges().iter().map(|&(u, v)| (u + n1, v + n1)));
    if join {
        edges.extend((1..=n1).flat_map(|u| (1..=g2.vertex_count()).map(move |v| (u, v + n1))));
    }
    Graph::from_edges(n1 + g2.vertex_count(), &edges)
}

/// Every named family graph with a vertex count in `sizes`.
pub fn family_graphs(sizes: RangeInclusive<usize>) -> Vec<Graph> {
    sizes
        .flat_map(|n| {
            [
                Family::Path(n),
                Family::Cycle(n),
                Family::Complete(n),
                Family::Edgeless(n),
                Family::SquaredPath(n),
            ]
        })
        .filter_map(|f| make_family(&f).ok())
        .collect()
}

/// Join and disjoint-union polynomial formulas for one ordered pair.
pub fn disjoint_union_rows(g1: &Graph, g2: &Graph, k: usize) -> Result<Vec<CheckRow>> {
    const GROUP: &str = "disjoint-union";
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    let (c1, c2) = (cut_complex(g1, k)?, cut_complex(g2, k)?);
    let (f1, f2) = (c1.f_polynomial(), c2.f_polynomial());
    let params = format!("{}, {}, k={k}", g1.label().unwrap_or("G1"), g2.label().unwrap_or("G2"));
    let joined = cut_complex(&glue(g1, g2, true)?, k)?;
    let union = cut_complex(&glue(g1, g2, false)?, k)?;
    Ok(vec![
        CheckRow::compare(
            GROUP,
            "f-poly join",
            &params,
            f_poly_join(&f1, &f2, n1, n2),
            joined.f_polynomial(),
        ),
        CheckRow::compare(
            GROUP,
            "f-poly union",
            &params,
            f_poly_disjoint_union(&f1, &f2, n1, n2, k),
            union.f_polynomial(),
        ),
        CheckRow::compare(
            GROUP,
            "h-poly union",
            &params,
            h_poly_disjoint_union(&h_or_zero(&c1)?, &h_or_zero(&c2)?, n1, n2, k),
            h_or_zero(&union)?,
        ),
    ])
}

fn verify_disjoint_union(sizes: RangeInclusive<usize>) -> Result<Vec<CheckRow>> {
    const GROUP: &str = "disjoint-union";
    let graphs = family_graphs(sizes.clone());
    let mut rows = Vec::new();
    for g1 in &graphs {
        for g2 in &graphs {
            for k in 2..=4 {
                rows.extend(disjoint_union_rows(g1, g2, k)?);
            }
        }
    }
    let (lo, hi) = (*sizes.start().max(&1), *sizes.end());
    let random = seeded_random_graphs(200, lo, hi, 0.5, 0x5eed)?;
    for pair in random.chunks(2) {
        for k in 2..=4 {
            rows.extend(disjoint_union_rows(&pair[0], &pair[1], k)?);
        }
    }
    let cap = hi.min(4);
    for m in 1..=cap {
        for n in 1..=cap {
            let union = graph(Family::union(Family::Complete(m), Family::Complete(n)))?;
            for k in 2..m + n {
                let params = format!("K{m}+K{n}, k={k}");
                let profile = homology_profile(&cut_complex(&union, k)?, false)?;
                let top = (m + n - k) as isize - 1;
                rows.push(CheckRow::compare(
                    GROUP,
                    "clique-union betti",
                    &params,
                    clique_union_betti(m, n, k),
                    profile.betti(top),
                ));
                rows.push(CheckRow::compare(
                    GROUP,
                    "clique-union concentrated",
                    &params,
                    true,
                    profile.betti.len() <= 1,
                ));
                // Each clique alone has a void cut complex, so both wedge counts are 0.
                rows.push(CheckRow::compare(
                    GROUP,
                    "wedge count",
                    &params,
                    wedge_count_disjoint_union(0, 0, m, n, k),
                    betti_sum(&profile),
                ));
            }
        }
    }
    Ok(rows)
}

fn verify_squared_path(ns: RangeInclusive<usize>) -> Result<Vec<CheckRow>> {
    const GROUP: &str = "squared-path";
    let mut rows = Vec::new();
    for n in ns.filter(|&n| n >= 5) {
        let g = graph(Family::SquaredPath(n))?;
        for k in 3..=n - 2 {
            let params = format!("k={k}, n={n}");
            if let SquaredPathBetti::Exact(v) = squared_path_betti(k, n)? {
                let c = cut_complex(&g, k)?;
                rows.push(CheckRow::compare(
                    GROUP,
                    "betti",
                    &params,
                    v,
                    betti_sum(&homology_profile(&c, false)?),
                ));
            }
            if n == k + 3 {
                let facets = cut_complex(&g, k)?.facet_count();
                rows.push(CheckRow::compare(GROUP, "facets k^2-1", &params, k * k - 1, facets));
            }
        }
        if n >= 6 {
            let params = format!("k=3, n={n}");
            let facets =
                |n| -> Result<i64> { Ok(cut_complex(&graph(Family::SquaredPath(n))?, 3)?.facet_count() as i64) };
            let step = binomial(n as i64 - 3, 2) + (n as i64 - 4) + (n as i64 - 5);
            rows.push(CheckRow::compare(
                GROUP,
                "facet recurrence",
                &params,
                step,
                facets(n)? - facets(n - 1)?,
            ));
            let smaller = betti_sum(&homology_profile(
                &cut_complex(&graph(Family::SquaredPath(n - 1))?, 3)?,
                false,
            )?);
            let wedge =
                gen_wedge_delta3_betti(&g, VertexSet::full(n - 1), VertexSet::from([n - 2, n - 1, n]), smaller)?;
            let direct = betti_sum(&homology_profile(&cut_complex(&g, 3)?, false)?);
            rows.push(CheckRow::compare(GROUP, "generalized wedge", &params, wedge, direct));
        }
    }
    Ok(rows)
}

fn brute_count(g: &Graph, k: usize) -> i64 {
    g.connected_k_subsets(k).len() as i64
}

fn verify_grid(ns: RangeInclusive<usize>) -> Result<Vec<CheckRow>> {
    const GROUP: &str = "grid";
    let mut rows = Vec::new();
    let hi = *ns.end();
    for n in ns.filter(|&n| n >= 2) {
        for m in 2..=n.min(hi) {
            let g = graph(Family::Grid(m, n))?;
            let size = m * n;
            let params = format!("{m}x{n}");
            rows.push(CheckRow::compare(
                GROUP,
                "tau3",
                &params,
                grid_tau3(m, n)?,
                brute_count(&g, 3),
            ));
            if (m, n) != (2, 2) {
                rows.push(CheckRow::compare(
                    GROUP,
                    "connected 4-sets",
                    &params,
                    grid_connected4(m, n)?,
                    brute_count(&g, 4),
                ));
            }
            if size > 16 {
                continue;
            }
            let delta3 = homology_profile(&cut_complex(&g, 3)?, false)?;
            rows.push(CheckRow::compare(
                GROUP,
                "delta3 betti",
                &params,
                grid_betti_delta3(m, n)?,
                betti_sum(&delta3) as i64,
            ));
            for k in [2, 4, 5, 6].into_iter().filter(|&k| k < size) {
                let c = cut_complex(&g, k)?;
                let predicted = grid_euler_predictions(m, n, k)?.value;
                rows.push(CheckRow::compare(
                    GROUP,
                    "reduced euler",
                    format!("{params}, k={k}"),
                    predicted,
                    euler_characteristic_reduced(&c),
                ));
            }
            let one_dim = grid_one_dim_prediction(m, n)?;
            let c = cut_complex(&g, one_dim.k)?;
            rows.push(CheckRow::compare(
                GROUP,
                "1-dim facets",
                &params,
                one_dim.facets,
                c.facet_count(),
            ));
            rows.push(CheckRow::compare(
                GROUP,
                "1-dim betti",
                &params,
                one_dim.betti,
                homology_profile(&c, false)?.betti,
            ));
            if m <= 4 && n <= 4 {
                for k in [2, 4, 6].into_iter().filter(|&k| k < size) {
                    let report = face_lattice_condition(&g, k, LatticeMode::Antichain)?;
                    rows.push(CheckRow::compare(
                        GROUP,
                        "lattice condition",
                        format!("{params}, k={k}"),
                        true,
                        report.holds,
                    ));
                }
            }
        }
    }
    if hi >= 3 {
        let report = face_lattice_condition(&graph(Family::Grid(3, 3))?, 8, LatticeMode::Antichain)?;
        let witness = report.counterexample.map(|w| (w.set, w.x));
        rows.push(CheckRow::compare(
            GROUP,
            "lattice witness",
            "3x3, k=8",
            Some((VertexSet::full(8), 9)),
            witness,
        ));
    }
    Ok(rows)
}

fn trace(c: &Complex, g: &Permutation) -> Result<Option<i64>> {
    let profile = homology_profile(c, false)?;
    trace_on_homology(c, &profile, g)
}

fn verify_characters(ns: RangeInclusive<usize>) -> Result<Vec<CheckRow>> {
    const GROUP: &str = "characters";
    let mut rows = Vec::new();
    let hi = *ns.end();
    for n in 1..=hi.min(9) {
        for k in 1..=n {
            let dim = hook_character(n, k, &Partition::new(vec![1; n]))?;
            rows.push(CheckRow::compare(
                GROUP,
                "hook dimension",
                format!("n={n}, k={k}"),
                binomial(n as i64 - 1, k as i64 - 1),
                dim,
            ));
        }
    }
    for n in ns.filter(|&n| n >= 4) {
        let path = graph(Family::Path(n))?;
        let cycle = graph(Family::Cycle(n))?;
        for k in 2..=n - 2 {
            let params = format!("n={n}, k={k}");
            let c = cut_complex(&path, k)?;
            for e in [PathElement::Identity, PathElement::Flip] {
                rows.push(CheckRow::compare(
                    GROUP,
                    "path",
                    format!("{params}, {e:?}"),
                    Some(character_path(n, k, e)?),
                    trace(&c, &e.permutation(n))?,
                ));
            }
            let c = cut_complex(&cycle, k)?;
            let profile = homology_profile(&c, false)?;
            for e in DihedralElement::all(n) {
                let oracle = trace_on_homology(&c, &profile, &e.permutation(n))?;
                rows.push(CheckRow::compare(
                    GROUP,
                    "cycle",
                    format!("{params}, {e:?}"),
                    Some(character_cycle(n, k, e)?),
                    oracle,
                ));
            }
        }
    }
    let cap = hi.min(4);
    for m in 1..=cap {
        for n in 1..=cap {
            let union = graph(Family::union(Family::Complete(m), Family::Complete(n)))?;
            for k in 2..m + n {
                let c = cut_complex(&union, k)?;
                let profile = homology_profile(&c, false)?;
                for lm in Partition::all(m) {
                    for ln in Partition::all(n) {
                        let g = Permutation::with_cycle_type(&lm).direct_sum(&Permutation::with_cycle_type(&ln));
                        rows.push(CheckRow::compare(
                            GROUP,
                            "clique union",
                            format!("K{m}+K{n}, k={k}, ({lm}; {ln})"),
                            Some(character_clique_union(m, n, k, &lm, &ln)?),
                            trace_on_homology(&c, &profile, &g)?,
                        ));
                    }
                }
            }
        }
    }
    Ok(rows)
}

/// Compares every formula of `family` with direct computation over `range`.
///
/// The range bounds the factor sizes for disjoint unions, `n` for squared
/// paths and characters, and the longer grid side for grids.
pub fn verify_formulas(family: FormulaFamily, range: RangeInclusive<usize>) -> Result<Vec<CheckRow>> {
    match family {
        FormulaFamily::DisjointUnion => verify_disjoint_union(range),
        FormulaFamily::SquaredPath => verify_squared_path(range),
        FormulaFamily::Grid => verify_grid(range),
        FormulaFamily::Characters => verify_characters(range),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranges_pass() {
        for (family, range) in [
            (FormulaFamily::DisjointUnion, 1..=3),
            (FormulaFamily::SquaredPath, 5..=8),
            (FormulaFamily::Grid, 2..=3),
            (FormulaFamily::Characters, 4..=6),
        ] {
            let rows = verify_formulas(family, range).unwrap();
            assert!(!rows.is_empty());
            let failed: Vec<_> = rows.iter().filter(|r| r.status != Status::Pass).collect();
            assert!(failed.is_empty(), "{family}: {failed:?}");
        }
    }

    #[test]
    fn family_names_round_trip() {
        for f in FormulaFamily::ALL {
            assert_eq!(f.name().parse::<FormulaFamily>().unwrap(), f);
        }
        assert!("tables".parse::<FormulaFamily>().is_err());
    }
}
