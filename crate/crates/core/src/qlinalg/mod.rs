//! Exact linear algebra over prime fields and canonical subspaces.
//!
//! Subspaces are stored in reduced row-echelon form, which makes equality of
//! values coincide with equality of subspaces. Over `F_2` (with `n <= 64`)
//! every basis row is a machine word whose most significant used bit is
//! column 0; every other prime uses one byte per entry.

pub mod bits;
mod field;
mod gauss;
mod linear_map;
mod subspace;

pub use field::FieldSpec;
pub use gauss::{gauss_binomial, gauss_bracket, GaussInt};
pub use linear_map::LinearMap;
pub use subspace::{
    enumerate_subspaces, enumerate_subspaces_with_budget, intersect_dim, rref, Subspace,
};
