//! End-to-end solvers: pairwise spanners, all-pair distance preservers,
//! single-source instances and the online variant.

mod manifest;
mod online;
mod pairwise;
mod preserver;
mod prune;
mod single_source;
mod tau;

pub use manifest::Manifest;
pub use online::{online_solve, OnlineError, OnlineRun, OnlineSolver, OnlineState};
pub use pairwise::{baseline_solution, solve_pairwise, solve_pairwise_at_tau, TauOutcome};
pub use preserver::{preserver_instance, solve_allpair_preserver, PRESERVER_ROUNDING_RETRIES};
pub use prune::prune_solution;
pub use single_source::solve_single_source;
pub use tau::{tau_schedule, TauSchedule};

use crate::junction::{Backend, JtError};
use crate::lp::ThinOptions;
use crate::rational::{ratio, Rat};
use crate::solution::Solution;
use thiserror::Error;

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub eps: Rat,
    pub seed: u64,
    /// Junction-tree search used by the thin phase and the online solver.
    pub backend: Backend,
    /// Rounding attempts per thin iteration.
    pub retry_cap: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            eps: ratio(1, 10),
            seed: 0,
            backend: Backend::Greedy,
            retry_cap: 20,
        }
    }
}

impl PipelineConfig {
    pub(crate) fn thin_options(&self) -> ThinOptions {
        ThinOptions {
            backend: self.backend,
            retry_cap: self.retry_cap,
        }
    }
}

/// A verified solution and the manifest of the run that produced it.
#[derive(Debug, Clone)]
pub struct Run {
    pub solution: Solution,
    pub manifest: Manifest,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("single-source mode needs a common source, found sources {0} and {1}")]
    MixedSources(usize, usize),
    #[error(transparent)]
    Junction(#[from] JtError),
    #[error("solver invariant violated: {0}")]
    Invariant(String),
}
