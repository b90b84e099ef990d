use thiserror::Error;

use crate::vertex_set::VertexSet;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation undefined on the void complex")]
    VoidComplex,

    #[error("complex is not pure")]
    NotPure,

    #[error("face {0} is not in the complex")]
    NotAFace(VertexSet),

    #[error("not a permutation of 1..={0}")]
    NotPermutation(usize),

    #[error("permutation does not preserve the complex: face {0} maps outside it")]
    NotInvariant(VertexSet),

    #[error("order is not a permutation of the facets")]
    NotFacetPermutation,

    #[error("shelling condition fails for facets at positions ({i}, {j})")]
    ShellingViolation { i: usize, j: usize },

    #[error("restriction of facet at position {0} is not a new face")]
    RestrictionNotNew(usize),

    #[error("interval partition covers {covered} faces but the complex has {total}")]
    IntervalPartition { covered: u64, total: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
