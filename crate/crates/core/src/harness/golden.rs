//! Reference values shipped with the crate: published Betti tables and the
//! facet lists of small worked examples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

const GOLDEN_JSON: &str = include_str!("../../data/golden.json");

/// A published table entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GoldenCell {
    Value(u64),
    Marker(CellMarker),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellMarker {
    /// The complex is void.
    Void,
    /// The table leaves the cell empty.
    Blank,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub k: usize,
    pub cells: Vec<GoldenCell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenTable {
    pub id: String,
    /// Family pattern with `{n}` standing for the column parameter.
    pub family: String,
    pub source: String,
    pub columns: Vec<usize>,
    pub rows: Vec<GoldenRow>,
    /// Values the antichain Euler formula predicts, printed next to the Betti numbers.
    #[serde(default)]
    pub predicted_rows: Vec<GoldenRow>,
}

impl GoldenTable {
    pub fn family_for(&self, n: usize) -> String {
        self.family.replace("{n}", &n.to_string())
    }

    /// Mutable access to the cell at `(k, n)`.
    pub fn cell_mut(&mut self, k: usize, n: usize) -> Option<&mut GoldenCell> {
        let col = self.columns.iter().position(|&c| c == n)?;
        self.rows.iter_mut().find(|r| r.k == k)?.cells.get_mut(col)
    }

    pub fn cell(&self, k: usize, n: usize) -> Option<GoldenCell> {
        let col = self.columns.iter().position(|&c| c == n)?;
        self.rows.iter().find(|r| r.k == k)?.cells.get(col).copied()
    }
}

/// A small graph with the facets of one of its cut complexes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenFigure {
    pub id: String,
    pub source: String,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub k: usize,
    pub facets: Vec<Vec<usize>>,
    pub shellable: bool,
}

impl GoldenFigure {
    pub fn graph(&self) -> Result<Graph> {
        Ok(Graph::from_edges(self.vertices, &self.edges)?.with_label(self.id.clone()))
    }

    pub fn facet_sets(&self) -> Vec<VertexSet> {
        let mut sets: Vec<VertexSet> = self.facets.iter().map(|f| VertexSet::from(f.as_slice())).collect();
        sets.sort();
        sets
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenData {
    pub version: u32,
    pub tables: Vec<GoldenTable>,
    pub figures: Vec<GoldenFigure>,
}

impl GoldenData {
    /// The data set embedded at build time.
    pub fn embedded() -> GoldenData {
        serde_json::from_str(GOLDEN_JSON).expect("embedded golden data is valid")
    }

    pub fn from_json(text: &str) -> Result<GoldenData> {
        let data: GoldenData = serde_json::from_str(text)?;
        for t in &data.tables {
            for row in t.rows.iter().chain(&t.predicted_rows) {
                if row.cells.len() != t.columns.len() {
                    return Err(Error::Parse(format!(
                        "table {} row k={} has the wrong width",
                        t.id, row.k
                    )));
                }
            }
        }
        Ok(data)
    }

    pub fn table(&self, id: &str) -> Option<&GoldenTable> {
        self.tables.iter().find(|t| t.id == id)
    }

    pub fn figure(&self, id: &str) -> Option<&GoldenFigure> {
        self.figures.iter().find(|f| f.id == id)
    }
}
