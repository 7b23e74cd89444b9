//! Clique machinery on local graphs: maximal clique growth, the clique
//! neighbour dichotomy, `K~_{m,n}` witnesses, maximum anti-cliques, the
//! constructive strong-clique partition and global line extraction.

mod anticlique;
mod clique;
mod lines;
mod params;
mod partition;

pub use anticlique::{
    max_anticlique, max_anticlique_with, AnticliqueOptions, AnticliqueSearch, Optimality,
};
pub use clique::{
    check_cbound, find_kmn_witness, grow_maximal_clique, CboundVerdict, KmnOutcome, KmnSearch,
    KmnWitness,
};
pub use lines::{
    certify_lines, extract_lines, extract_lines_at, extract_lines_with, ExtractOptions,
    LineCertification, LineExtraction, LocalFailure, SampledExtraction,
};
pub use params::{LineMode, PlsParams};
pub use partition::{
    lemma_conditions, strong_clique_partition, strong_clique_partition_with, CliquePartition,
    LemmaConditions, PartitionFlags,
};
