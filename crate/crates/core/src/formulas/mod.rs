//! Closed-form predictions for cut complexes, each checked in tests against
//! a direct computation.

mod characters;
mod disjoint_union;
mod grid;
mod lattice;
mod squared_path;

use serde::{Deserialize, Serialize};

pub use characters::{
    character, character_clique_union, character_cycle, character_path, hook_character, DihedralElement, PathElement,
};
pub use disjoint_union::{
    clique_union_betti, f_poly_clique_union, f_poly_disjoint_union, f_poly_join, h_poly_clique_union,
    h_poly_clique_union_k2, h_poly_disjoint_union, wedge_count_disjoint_union,
};
pub use grid::{
    grid_antichain_prediction, grid_betti_delta3, grid_connected4, grid_euler_predictions, grid_one_dim_prediction,
    grid_tau3, OneDimPrediction,
};
pub use lattice::{face_lattice_condition, LatticeMode, LatticeReport, LatticeWitness};
pub use squared_path::{gen_wedge_delta3_betti, squared_path_betti, squared_path_recurrence, SquaredPathBetti};

/// What a predicted value measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    Betti,
    Euler,
    FacetCount,
    Character,
}

/// A value produced by a formula, labelled with where it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedInvariant {
    pub family: String,
    pub parameters: Vec<(String, i64)>,
    pub quantity: Quantity,
    pub value: i64,
    pub source: String,
}
