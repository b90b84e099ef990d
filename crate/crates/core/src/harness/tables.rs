//! Recomputing published tables cell by cell and diffing against the golden values.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cache::{record_key, Cache, ResultRecord};
use super::golden::{CellMarker, GoldenCell, GoldenTable};
use super::{Budget, Status};
use crate::complex::cut_complex;
use crate::error::Result;
use crate::formulas::grid_antichain_prediction;
use crate::graph::{make_family, Family};
use crate::homology::homology_profile;
use crate::poly::binomial;

/// Reduced homology of one cut complex, as a table cell sees it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CellValue {
    Void,
    /// Homology in at most one dimension; zero if acyclic.
    Betti {
        value: u64,
    },
    /// Homology in several dimensions.
    Spread {
        betti: BTreeMap<isize, u64>,
    },
}

impl CellValue {
    fn matches(&self, expected: GoldenCell) -> Option<bool> {
        match expected {
            GoldenCell::Marker(CellMarker::Blank) => None,
            GoldenCell::Marker(CellMarker::Void) => Some(*self == CellValue::Void),
            GoldenCell::Value(0) => Some(matches!(self, CellValue::Void | CellValue::Betti { value: 0 })),
            GoldenCell::Value(v) => Some(*self == CellValue::Betti { value: v }),
        }
    }

    pub fn betti(&self) -> Option<u64> {
        match self {
            CellValue::Void => Some(0),
            CellValue::Betti { value } => Some(*value),
            CellValue::Spread { .. } => None,
        }
    }
}

impl fmt::Display for CellValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellValue::Void => write!(f, "void"),
            CellValue::Betti { value } => write!(f, "{value}"),
            CellValue::Spread { betti } => write!(f, "{betti:?}"),
        }
    }
}

impl fmt::Display for GoldenCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoldenCell::Value(v) => write!(f, "{v}"),
            GoldenCell::Marker(CellMarker::Void) => write!(f, "void"),
            GoldenCell::Marker(CellMarker::Blank) => write!(f, "-"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub k: usize,
    pub n: usize,
    pub family: String,
    pub expected: GoldenCell,
    pub computed: Option<CellValue>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

/// A parenthesized prediction next to the Betti number actually computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionReport {
    pub k: usize,
    pub n: usize,
    pub expected: u64,
    pub formula: i64,
    pub actual_betti: Option<u64>,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub id: String,
    pub source: String,
    pub cells: Vec<CellReport>,
    pub predictions: Vec<PredictionReport>,
}

impl TableReport {
    /// Cells whose computed value disagrees with the table.
    pub fn diff(&self) -> Vec<&CellReport> {
        self.cells.iter().filter(|c| c.status == Status::Fail).collect()
    }

    pub fn count(&self, status: Status) -> usize {
        self.cells.iter().filter(|c| c.status == status).count()
            + self.predictions.iter().filter(|p| p.status == status).count()
    }
}

/// Upper bound on the number of faces of `Δ_k` on `n` vertices.
pub fn face_bound(n: usize, k: usize) -> u64 {
    (0..=n.saturating_sub(k))
        .map(|j| binomial(n as i64, j as i64) as u64)
        .sum()
}

/// Computes the homology cell of `Δ_k(family)`, consulting the cache first.
pub fn compute_cell(family: &str, k: usize, cache: Option<&Cache>) -> Result<CellValue> {
    let key = record_key(family, k, "table-cell");
    if let Some(record) = cache.map(|c| c.load(&key)).transpose()?.flatten() {
        return Ok(serde_json::from_value(record.payload)?);
    }
    let start = Instant::now();
    let graph = make_family(&family.parse::<Family>()?)?;
    let complex = cut_complex(&graph, k)?;
    let value = if complex.is_void() {
        CellValue::Void
    } else {
        let profile = homology_profile(&complex, false)?;
        match profile.betti.len() {
            0 => CellValue::Betti { value: 0 },
            1 => CellValue::Betti {
                value: *profile.betti.values().next().expect("one entry"),
            },
            _ => CellValue::Spread { betti: profile.betti },
        }
    };
    if let Some(cache) = cache {
        cache.store(&ResultRecord::new(key, serde_json::to_value(&value)?, start.elapsed()))?;
    }
    Ok(value)
}

/// Grid dimensions `(m, n)` encoded in a table's family pattern, if any.
fn grid_rows(table: &GoldenTable) -> Option<usize> {
    match table.family_for(2).parse::<Family>().ok()? {
        Family::Grid(m, _) => Some(m),
        _ => None,
    }
}

/// Recomputes every cell of `table` within the budget and diffs it against
/// the published values. Cells over the budget are reported as skipped.
pub fn reproduce_table(table: &GoldenTable, budget: &Budget, cache: Option<&Cache>) -> Result<TableReport> {
    let start = Instant::now();
    let jobs: Vec<(usize, usize, GoldenCell)> = table
        .rows
        .iter()
        .flat_map(|row| {
            table
                .columns
                .iter()
                .zip(&row.cells)
                .map(move |(&n, &cell)| (row.k, n, cell))
        })
        .collect();
    let cells: Vec<CellReport> = jobs
        .par_iter()
        .map(|&(k, n, expected)| {
            let family = table.family_for(n);
            let vertices = make_family(&family.parse()?)?.vertex_count();
            let estimate = face_bound(vertices, k);
            let skip = if estimate > budget.max_faces {
                Some(format!(
                    "estimated {estimate} faces exceed the per-cell cap of {}",
                    budget.max_faces
                ))
            } else if start.elapsed() > budget.total {
                Some(format!("global budget exhausted; estimated {estimate} faces"))
            } else {
                None
            };
            if let Some(note) = skip {
                return Ok(CellReport {
                    k,
                    n,
                    family,
                    expected,
                    computed: None,
                    status: Status::Skipped,
                    note: Some(note),
                });
            }
            let computed = compute_cell(&family, k, cache)?;
            let status = match computed.matches(expected) {
                Some(true) => Status::Pass,
                Some(false) => Status::Fail,
                None => Status::Pass,
            };
            let note = (expected == GoldenCell::Marker(CellMarker::Blank)).then(|| "no published value".to_string());
            Ok(CellReport {
                k,
                n,
                family,
                expected,
                computed: Some(computed),
                status,
                note,
            })
        })
        .collect::<Result<_>>()?;

    let mut predictions = Vec::new();
    if let Some(m) = grid_rows(table) {
        for row in &table.predicted_rows {
            for (&n, &cell) in table.columns.iter().zip(&row.cells) {
                let GoldenCell::Value(expected) = cell else { continue };
                let formula = grid_antichain_prediction(m, n, row.k)?.value;
                let actual_betti = cells
                    .iter()
                    .find(|c| c.k == row.k && c.n == n)
                    .and_then(|c| c.computed.as_ref())
                    .and_then(CellValue::betti);
                let status = if formula.unsigned_abs() == expected {
                    Status::Pass
                } else {
                    Status::Fail
                };
                predictions.push(PredictionReport {
                    k: row.k,
                    n,
                    expected,
                    formula,
                    actual_betti,
                    status,
                });
            }
        }
    }
    Ok(TableReport {
        id: table.id.clone(),
        source: table.source.clone(),
        cells,
        predictions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::golden::GoldenData;

    #[test]
    fn small_table_matches() {
        let data = GoldenData::embedded();
        let mut table = data.table("grid-2n").unwrap().clone();
        table.columns.truncate(4);
        for row in table.rows.iter_mut().chain(table.predicted_rows.iter_mut()) {
            row.cells.truncate(4);
        }
        let report = reproduce_table(&table, &Budget::default(), None).unwrap();
        assert!(report.diff().is_empty(), "{:?}", report.diff());
        assert_eq!(report.count(Status::Skipped), 0);
        let p = report.predictions.iter().find(|p| p.n == 4).unwrap();
        assert_eq!((p.expected, p.formula, p.actual_betti), (11, 11, Some(13)));
    }

    #[test]
    fn corrupted_value_fails_at_its_coordinates() {
        let data = GoldenData::embedded();
        let mut table = data.table("squared-path").unwrap().clone();
        table.columns.truncate(3);
        for row in &mut table.rows {
            row.cells.truncate(3);
        }
        *table.cell_mut(3, 7).unwrap() = GoldenCell::Value(4);
        let report = reproduce_table(&table, &Budget::default(), None).unwrap();
        let diff = report.diff();
        assert_eq!(diff.len(), 1);
        assert_eq!((diff[0].k, diff[0].n), (3, 7));
        assert_eq!(diff[0].computed, Some(CellValue::Betti { value: 3 }));
    }

    #[test]
    fn budget_skips_large_cells() {
        let data = GoldenData::embedded();
        let table = data.table("grid-3n").unwrap();
        let budget = Budget {
            max_faces: 5000,
            ..Budget::default()
        };
        let report = reproduce_table(table, &budget, None).unwrap();
        let skipped = report.cells.iter().find(|c| c.k == 2 && c.n == 6).unwrap();
        assert_eq!(skipped.status, Status::Skipped);
        assert!(skipped.note.as_ref().unwrap().contains("faces"));
        assert!(report.diff().is_empty());
    }

    #[test]
    fn cache_hits_equal_recomputation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let first = compute_cell("grid:3x3", 5, Some(&cache)).unwrap();
        let second = compute_cell("grid:3x3", 5, Some(&cache)).unwrap();
        assert_eq!(first, second);
        assert_eq!(first, compute_cell("grid:3x3", 5, None).unwrap());
        assert_eq!(first, CellValue::Betti { value: 25 });
    }
}
