//! End-to-end driver: classification, instance generation, corpus sweeps
//! and the verification suites.

mod classify;
mod gen;
mod par;
mod sweep;
mod verify;

pub use classify::{
    check_scope, classify, color_minus_e, greedy_kempe, in_scope, random_permutation, scramble,
    Certificate, ClassificationResult, Method, Verdict,
};
pub use gen::{feasible_heavy_counts, random_h4, GenError};
pub use par::{effective_jobs, par_map, seq_map};
pub use sweep::{sweep_line, sweep_lines, sweep_stream, LineReport, SweepSummary};
pub use verify::{
    extension_trial, kempe_trial, small_graphs, verify, Failure, Scale, Suite, VerifyReport,
};

use thiserror::Error;

use crate::coloring::ColoringError;
use crate::graph::GraphError;
use crate::oracle::{OracleBudget, OracleError};
use crate::reducibility::ExtendError;
use crate::structure::StructureError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("not 4-edge-colorable: {0}")]
    NotColorable(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Extend(#[from] ExtendError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Settings shared by every driver entry point.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Seeds every randomized step.
    pub seed: u64,
    pub budget: OracleBudget,
    /// Largest order at which sweeps cross-check against the exact oracle.
    pub oracle_cutoff: usize,
    /// Worker threads; `None` uses the pool default.
    pub jobs: Option<usize>,
    /// Attach extension traces to reports.
    pub trace: bool,
    /// Write measured durations into reports; off gives byte-identical
    /// output across runs.
    pub record_timings: bool,
    /// Classify each component of a disconnected input separately.
    pub per_component: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            budget: OracleBudget::default(),
            oracle_cutoff: 12,
            jobs: None,
            trace: false,
            record_timings: false,
            per_component: false,
        }
    }
}
