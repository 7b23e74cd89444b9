//! Graphs in compressed sparse row form and the operations the line
//! extraction needs from them: Grassmann construction, distance-regularity
//! audits, local graphs and smallest-eigenvalue estimates.

mod audit;
mod bitgraph;
mod graph;
mod grassmann;
mod local;
mod spectral;

pub use audit::{
    audit_distance_regular, AuditFailure, AuditMode, AuditScope, DistanceRegularityAudit,
    FailureKind, TransitivityCertificate,
};
pub use bitgraph::BitGraph;
pub use graph::{Graph, SubspaceLabels};
pub use grassmann::{
    build_grassmann_graph, build_grassmann_graph_pairwise, build_grassmann_graph_with_budget,
    grassmann_automorphisms, grassmann_degree, SubspaceIndex,
};
pub use local::{local_graph, LocalGraph};
pub use spectral::{min_eigenvalue, min_eigenvalue_with, EigenEstimate, PowerIterationOptions};
