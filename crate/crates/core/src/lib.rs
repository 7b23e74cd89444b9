//! Exact machinery for recovering line systems of distance-regular graphs
//! with classical parameters.
//!
//! The crate is organised bottom-up:
//!
//! - [`qlinalg`]: prime-field arithmetic, Gaussian binomials and canonical
//!   (reduced row-echelon) subspaces.
//! - [`drgparams`]: intersection arrays, spectra and the inequality calculus
//!   that decides when clique-based line extraction is guaranteed to work.
//! - [`graphcore`]: compressed graphs, Grassmann graph construction,
//!   distance-regularity audits, local graphs and a power-iteration
//!   eigenvalue estimate.
//! - [`cliquelines`]: the clique/anti-clique engine that partitions local
//!   graphs into strong cliques and assembles global lines.
//! - [`plspace`]: partial linear spaces, the Ray-Chaudhuri–Sprague
//!   conditions and the subspace-theoretic line oracle.

pub mod budget;
pub mod cliquelines;
pub mod drgparams;
mod error;
pub mod graphcore;
pub mod plspace;
pub mod qlinalg;

pub use budget::Budget;
pub use error::{Error, Result};
