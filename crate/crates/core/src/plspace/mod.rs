//! Partial linear spaces built from line sets, the five
//! Ray-Chaudhuri–Sprague conditions, and the subspace line oracle.

mod oracle;
mod pls;
mod rcs;

pub use oracle::{
    compare_line_sets, grassmann_line_oracle, grassmann_line_oracle_with_budget, LineSetComparison,
};
pub use pls::{build_pls, pls_point_graph, PartialLinearSpace};
pub use rcs::{
    verify_rcs, verify_rcs_with, CountCheck, RcsCoverage, RcsOptions, RcsReport, ThresholdCheck,
};
