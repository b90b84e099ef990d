//! The full verification suite and the conjecture reports.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::cache::Cache;
use super::catalog::connected_graph_catalog;
use super::golden::GoldenData;
use super::tables::{compute_cell, reproduce_table, CellValue};
use super::verify::{verify_formulas, CheckRow, FormulaFamily};
use super::{Budget, Status};
use crate::complex::{cut_complex, Complex};
use crate::error::{Error, Result};
use crate::formulas::{squared_path_recurrence, SquaredPathBetti};
use crate::graph::{make_family, Family, Graph};
use crate::homology::homology_profile;
use crate::morse::{grid_delta4_matching, verify_matching};
use crate::poly::binomial;
use crate::shelling::{
    find_shelling, squared_path_shelling, squared_path_wedge_shelling, verify_shelling, SearchLimits,
};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub rows: Vec<CheckRow>,
    /// Conjecture checks, never counted as failures.
    pub conjectures: Vec<CheckRow>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn count(&self, status: Status) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    /// Per-group counts of each status.
    pub fn summary(&self) -> BTreeMap<String, BTreeMap<Status, usize>> {
        let mut out: BTreeMap<String, BTreeMap<Status, usize>> = BTreeMap::new();
        for r in self.rows.iter().chain(&self.conjectures) {
            *out.entry(r.group.clone()).or_default().entry(r.status).or_default() += 1;
        }
        out
    }

    /// 1 on any failure, 2 when something stayed undecided or skipped, else 0.
    pub fn exit_code(&self) -> i32 {
        let undecided = |r: &CheckRow| matches!(r.status, Status::Undecided | Status::Skipped);
        if self.count(Status::Fail) > 0 {
            1
        } else if self.rows.iter().chain(&self.conjectures).any(undecided) {
            2
        } else {
            0
        }
    }
}

/// Shellability of `Δ₂` by search; the void complex counts as shellable.
pub fn delta2_shellable(graph: &Graph, limits: SearchLimits) -> Result<Option<bool>> {
    let c = cut_complex(graph, 2)?;
    if c.is_void() {
        return Ok(Some(true));
    }
    let search = find_shelling(&c, limits)?;
    Ok(if search.is_undecided() {
        None
    } else {
        Some(search.is_found())
    })
}

fn table_rows(golden: &GoldenData, budget: &Budget, cache: Option<&Cache>) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for table in &golden.tables {
        let report = reproduce_table(table, budget, cache)?;
        let group = format!("table:{}", table.id);
        for c in report.cells {
            let computed = c
                .computed
                .map_or_else(|| c.note.clone().unwrap_or_default(), |v| v.to_string());
            rows.push(CheckRow::new(
                &group,
                "betti",
                format!("k={}, n={}", c.k, c.n),
                c.expected,
                computed,
                c.status,
            ));
        }
        for p in report.predictions {
            let computed = format!(
                "{} (actual betti {})",
                p.formula.unsigned_abs(),
                p.actual_betti.map_or("?".into(), |b| b.to_string())
            );
            rows.push(CheckRow::new(
                &group,
                "antichain prediction",
                format!("k={}, n={}", p.k, p.n),
                p.expected,
                computed,
                p.status,
            ));
        }
    }
    Ok(rows)
}

fn figure_rows(golden: &GoldenData) -> Result<Vec<CheckRow>> {
    const GROUP: &str = "figures";
    let mut rows = Vec::new();
    for fig in &golden.figures {
        let c = cut_complex(&fig.graph()?, fig.k)?;
        rows.push(CheckRow::compare(
            GROUP,
            "facets",
            &fig.id,
            fig.facet_sets(),
            c.facets().to_vec(),
        ));
        let found = find_shelling(&c, SearchLimits::default())?;
        rows.push(CheckRow::compare(
            GROUP,
            "shellable",
            &fig.id,
            Some(fig.shellable),
            (!found.is_undecided()).then(|| found.is_found()),
        ));
    }
    Ok(rows)
}

fn edgeless_rows() -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for n in 3..=8 {
        let g = make_family(&Family::Edgeless(n))?;
        for k in 2..n {
            let p = homology_profile(&cut_complex(&g, k)?, true)?;
            let expected = BTreeMap::from([((n - k) as isize - 1, binomial(n as i64 - 1, k as i64 - 1) as u64)]);
            let params = format!("n={n}, k={k}");
            rows.push(CheckRow::compare(
                "edgeless",
                "torsion-free",
                &params,
                Some(true),
                p.is_torsion_free(),
            ));
            rows.push(CheckRow::compare("edgeless", "betti", &params, expected, p.betti));
        }
    }
    Ok(rows)
}

fn shelling_rows(max_n: usize) -> Result<Vec<CheckRow>> {
    const GROUP: &str = "squared-path shelling";
    let mut rows = Vec::new();
    for n in 5..=max_n {
        let g = make_family(&Family::SquaredPath(n))?;
        for k in 2..=n - 3 {
            let params = format!("k={k}, n={n}");
            let cert = squared_path_shelling(n, k)?;
            let c = cut_complex(&g, k)?;
            let verified = verify_shelling(&c, &cert.order).is_ok();
            rows.push(CheckRow::compare(GROUP, "verified", &params, true, verified));
            let betti: u64 = homology_profile(&c, false)?.betti.values().sum();
            rows.push(CheckRow::compare(
                GROUP,
                "full restrictions",
                &params,
                betti,
                cert.full_restriction_count as u64,
            ));
        }
        if n >= 6 {
            let cert = squared_path_wedge_shelling(n)?;
            let expected: Vec<VertexSet> = sphere_set(n);
            let mut got = cert.full_restriction_facets();
            got.sort();
            rows.push(CheckRow::compare(
                GROUP,
                "k=3 sphere set",
                format!("n={n}"),
                expected,
                got,
            ));
        }
    }
    Ok(rows)
}

/// Complements of `{b, j-2, j}` with `1 <= b <= j-5`, `6 <= j <= n`, sorted.
pub fn sphere_set(n: usize) -> Vec<VertexSet> {
    let mut sets: Vec<VertexSet> = (6..=n)
        .flat_map(|j| (1..=j - 5).map(move |b| VertexSet::from([b, j - 2, j]).complement(n)))
        .collect();
    sets.sort();
    sets
}

fn morse_rows() -> Result<Vec<CheckRow>> {
    const GROUP: &str = "grid morse";
    let mut rows = Vec::new();
    for (m, n) in [(2, 3), (2, 4), (2, 5), (3, 3), (3, 4)] {
        let params = format!("{m}x{n}");
        let g = make_family(&Family::Grid(m, n))?;
        let c = cut_complex(&g, 4)?;
        let report = verify_matching(&c, &grid_delta4_matching(m, n)?)?;
        rows.push(CheckRow::compare(
            GROUP,
            "valid and acyclic",
            &params,
            (true, true),
            (report.valid, report.acyclic),
        ));
        let top = (m * n) as isize - 5;
        let critical: usize = report.critical_by_dim.values().sum();
        rows.push(CheckRow::compare(
            GROUP,
            "critical dimension",
            &params,
            critical,
            report.critical_by_dim.get(&top).copied().unwrap_or(0),
        ));
        let betti = homology_profile(&c, false)?.betti;
        let expected = if critical == 0 {
            BTreeMap::new()
        } else {
            BTreeMap::from([(top, critical as u64)])
        };
        rows.push(CheckRow::compare(GROUP, "homology", &params, expected, betti));
        let euler = binomial((m * n) as i64 - 1, 3) - g.connected_k_subsets(4).len() as i64;
        rows.push(CheckRow::compare(
            GROUP,
            "euler formula",
            &params,
            euler,
            critical as i64,
        ));
    }
    Ok(rows)
}

fn froberg_rows(limits: SearchLimits) -> Result<Vec<CheckRow>> {
    const GROUP: &str = "chordal iff shellable";
    let mut rows = Vec::new();
    for g in connected_graph_catalog(6)? {
        let shellable = delta2_shellable(&g, limits)?;
        let status = match shellable {
            None => Status::Undecided,
            Some(s) if s == g.is_chordal() => Status::Pass,
            Some(_) => Status::Fail,
        };
        rows.push(CheckRow::new(
            GROUP,
            "delta2",
            g.to_edge_list().trim().replace('\n', " "),
            g.is_chordal(),
            format!("{shellable:?}"),
            status,
        ));
    }
    Ok(rows)
}

/// Every check of the suite except the conjectures.
pub fn run_verification_suite(golden: &GoldenData, budget: &Budget, cache: Option<&Cache>) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rows = figure_rows(golden)?;
    rows.extend(edgeless_rows()?);
    rows.extend(table_rows(golden, budget, cache)?);
    rows.extend(shelling_rows(11)?);
    rows.extend(morse_rows()?);
    for family in FormulaFamily::ALL {
        rows.extend(verify_formulas(family, family.default_range())?);
    }
    rows.extend(froberg_rows(SearchLimits::default())?);
    Ok(SuiteReport {
        rows,
        conjectures: Vec::new(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn conjecture_status(holds: bool) -> Status {
    if holds {
        Status::Consistent
    } else {
        Status::Refuted
    }
}

/// Checks the conjectured squared-path recurrence and polynomials on all
/// computable cells up to `max_n`, and grid shellability by search.
pub fn conjecture_rows(max_n: usize, cache: Option<&Cache>, limits: SearchLimits) -> Result<Vec<CheckRow>> {
    const RECURRENCE: &str = "conjecture: squared-path recurrence";
    const POLYNOMIAL: &str = "conjecture: squared-path polynomials";
    const GRIDS: &str = "conjecture: grid shellability";
    let mut betti = BTreeMap::new();
    for n in 5..=max_n {
        for k in 3..=n - 2 {
            match compute_cell(&format!("squared-path:{n}"), k, cache)? {
                CellValue::Betti { value } => betti.insert((k, n), value as i64),
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unexpected cell {other} at k={k}, n={n}"
                    )))
                }
            };
        }
    }
    let lookup = |k: usize, n: usize| betti.get(&(k, n)).copied();
    let mut rows = Vec::new();
    for (&(k, n), &value) in &betti {
        let params = format!("k={k}, n={n}");
        if let Some(predicted) = squared_path_recurrence(k, n, lookup) {
            rows.push(CheckRow::new(
                RECURRENCE,
                "beta",
                &params,
                predicted,
                value,
                conjecture_status(predicted == value),
            ));
        }
        if k == 4 || k == 5 {
            if let SquaredPathBetti::Conjectural(p) = crate::formulas::squared_path_betti(k, n)? {
                rows.push(CheckRow::new(
                    POLYNOMIAL,
                    "beta",
                    &params,
                    p,
                    value,
                    conjecture_status(p as i64 == value),
                ));
            }
        }
    }
    let beyond = format!("n > {max_n}");
    rows.push(CheckRow::new(
        RECURRENCE,
        "beta",
        &beyond,
        "-",
        "not computed",
        Status::Undecided,
    ));
    rows.push(CheckRow::new(
        POLYNOMIAL,
        "beta",
        &beyond,
        "-",
        "not computed",
        Status::Undecided,
    ));
    for (m, n) in [(2, 3), (2, 4), (3, 3), (2, 5), (3, 4)] {
        let g = make_family(&Family::Grid(m, n))?;
        for k in 3..=m * n - 3 {
            let c: Complex = cut_complex(&g, k)?;
            let params = format!("{m}x{n}, k={k}");
            let (status, computed) = match find_shelling(&c, limits)? {
                s if s.is_found() => (Status::Consistent, "shelling found".to_string()),
                s if s.is_undecided() => (Status::Undecided, "search limit reached".to_string()),
                _ => (Status::Refuted, "no shelling exists".to_string()),
            };
            rows.push(CheckRow::new(GRIDS, "shellable", params, "shellable", computed, status));
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_set_small_cases() {
        assert_eq!(sphere_set(6), vec![VertexSet::from([1, 4, 6]).complement(6)]);
        assert_eq!(sphere_set(8).len(), 6);
    }

    #[test]
    fn exit_codes() {
        let mut report = SuiteReport::default();
        assert_eq!(report.exit_code(), 0);
        report
            .conjectures
            .push(CheckRow::new("c", "x", "", 1, 1, Status::Undecided));
        assert_eq!(report.exit_code(), 2);
        report.conjectures[0].status = Status::Refuted;
        assert_eq!(report.exit_code(), 0);
        report.rows.push(CheckRow::new("g", "x", "", 1, 2, Status::Fail));
        assert_eq!(report.exit_code(), 1);
    }

    #[test]
    fn conjectures_on_small_range() {
        let limits = SearchLimits {
            max_facets: 200,
            max_nodes: 100_000,
        };
        let rows = conjecture_rows(10, None, limits).unwrap();
        assert!(rows.iter().all(|r| r.status != Status::Refuted), "{rows:?}");
        assert!(rows
            .iter()
            .any(|r| r.group.contains("recurrence") && r.status == Status::Consistent));
        assert!(rows
            .iter()
            .any(|r| r.group.contains("polynomials") && r.status == Status::Consistent));
    }

    #[test]
    fn froberg_on_catalog() {
        let rows = froberg_rows(SearchLimits::default()).unwrap();
        assert_eq!(rows.len(), 143);
        assert!(rows.iter().all(|r| r.status == Status::Pass));
    }
}
