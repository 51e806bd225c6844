//! Exact verification of EKR-type extremal questions for independent
//! r-sets in pendant graph constructions.
//!
//! The crate builds the graph families (pendant cliques over complete
//! graphs, paths and cycles, disjoint cliques, graph powers), enumerates
//! independent r-sets, implements the family machinery used in the
//! combinatorial proofs (stars, shadows, shifts, partitions), computes
//! exact maximum intersecting families via branch-and-bound on the
//! disjointness graph, and packages the comparison as an EKR verdict.

pub mod dimacs;
pub mod error;
pub mod family;
pub mod graph;
pub mod shift;
pub mod solver;
pub mod theorems;
pub mod vset;

pub use error::{Error, Result};
pub use family::{partition_by_base, BasePartition, SetFamily};
pub use graph::{BaseKind, Graph, PendantSpec, VertexRole};
pub use shift::{shift_base_pendant, shift_local, stabilize, ShiftOp, StabilizeOutcome};
pub use solver::{
    all_maximum_intersecting, greedy_lower_bound, max_intersecting, AllMaximumResult,
    DisjointnessGraph, MaxFamilyResult, SolverConfig, SolverMode,
};
pub use theorems::{
    counterexample_report, katona_check, largest_star_centers, verify_ekr, EkrClass, EkrVerdict,
    KatonaReport,
};
pub use vset::VertexSet;
