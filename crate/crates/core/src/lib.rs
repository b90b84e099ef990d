//! Cut complexes of graphs.
//!
//! For a graph `G` on `n` vertices, `Δ_k(G)` is the simplicial complex whose
//! facets are the `(n-k)`-sets whose complement induces a disconnected
//! subgraph. This crate builds these complexes and computes their face
//! counts, integral homology, shellings, discrete Morse matchings and
//! automorphism characters exactly. It also checks closed-form predictions
//! against those computations.
//!
//! ```
//! use cutcomplex::complex::cut_complex;
//! use cutcomplex::graph::{make_family, Family};
//! use cutcomplex::homology::homology_profile;
//!
//! let g = make_family(&"squared-path:7".parse::<Family>().unwrap()).unwrap();
//! let c = cut_complex(&g, 3).unwrap();
//! assert_eq!(homology_profile(&c, false).unwrap().betti(3), 3);
//! ```
//!
//! The guide in `book/` walks through each module; its code blocks run as
//! doctests.

pub mod complex;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod harness;
pub mod homology;
pub mod linalg;
pub mod morse;
pub mod perm;
pub mod poly;
pub mod shelling;
pub mod vertex_set;

// Compile the guide's code blocks as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/cut-complexes.md")]
    mod cut_complexes {}
    #[doc = include_str!("../../../book/src/face-counts.md")]
    mod face_counts {}
    #[doc = include_str!("../../../book/src/homology.md")]
    mod homology {}
    #[doc = include_str!("../../../book/src/shelling.md")]
    mod shelling {}
    #[doc = include_str!("../../../book/src/morse.md")]
    mod morse {}
    #[doc = include_str!("../../../book/src/formulas.md")]
    mod formulas {}
    #[doc = include_str!("../../../book/src/characters.md")]
    mod characters {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
