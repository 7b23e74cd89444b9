//! Exact parameter calculus for distance-regular graphs with classical
//! parameters. Nothing in this module uses floating point.

mod classical;
mod conditions;
mod exact;
mod metsch;
mod spectrum;

pub use classical::{
    classical_eigenvalues, classical_intersection_numbers, grassmann_params, ClassicalParams,
    IntersectionArray,
};
pub use conditions::{
    cbound_clique_threshold, default_s, feasible_s_search, kfree_parameters, pls_margins,
    theorem_main_conditions, MainConditionsReport, MainMargins, MainPass, PlsMargins,
};
pub use exact::Exact;
pub use metsch::{metsch_exception_case, MetschCase};
pub use spectrum::{
    grassmann_spectrum, local_eigen_lower_bound, verify_tridiagonal_spectrum, Eigenvalue, Spectrum,
};
