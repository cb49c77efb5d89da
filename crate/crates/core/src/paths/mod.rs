//! Restricted and resource-constrained shortest paths.
//!
//! Lengths are positive integers, so the length dimension is always kept
//! exact: dynamic programs run over `(vertex, length)` states. Only the
//! objective (for the FPTAS) or the price dimension (for RCSP) is scaled.

mod rcsp;
mod rsp;
mod table;

pub use rcsp::{rcsp_exact_with, rcsp_price, rcsp_with};
pub use rsp::{min_length_under_cost, rsp, rsp_exact, rsp_exact_with, rsp_fptas};
pub use table::{CostLengthTable, Direction};

use crate::instance::{EdgeId, Instance, VertexId};
use crate::rational::Rat;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstrainedPath {
    pub edge_ids: Vec<EdgeId>,
    pub total_cost: Rat,
    pub total_length: u64,
    /// Only set for priced queries.
    pub total_price: Option<Rat>,
}

impl ConstrainedPath {
    pub(crate) fn from_edges(inst: &Instance, edge_ids: Vec<EdgeId>, costs: &[Rat]) -> Self {
        let total_cost = edge_ids.iter().fold(Rat::default(), |acc, &e| acc + &costs[e]);
        let total_length = edge_ids.iter().map(|&e| inst.edge(e).length).sum();
        ConstrainedPath {
            edge_ids,
            total_cost,
            total_length,
            total_price: None,
        }
    }

    pub(crate) fn empty() -> Self {
        ConstrainedPath {
            edge_ids: Vec::new(),
            total_cost: Rat::default(),
            total_length: 0,
            total_price: None,
        }
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum PathError {
    #[error("no feasible path from {0} to {1}")]
    NoFeasiblePath(VertexId, VertexId),
    #[error("no path from {0} to {1} within the cost budget")]
    NoCheapPath(VertexId, VertexId),
}

/// Which RSP engine to use for a given length budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RspPolicy {
    /// Budgets up to this value use the exact DP; larger ones use the FPTAS.
    pub exact_cap: u64,
}

impl RspPolicy {
    /// Exact whenever `T <= 10 n`.
    pub fn for_instance(inst: &Instance) -> Self {
        RspPolicy {
            exact_cap: 10 * inst.n() as u64,
        }
    }

    pub fn always_exact() -> Self {
        RspPolicy {
            exact_cap: u64::MAX,
        }
    }

    pub fn always_fptas() -> Self {
        RspPolicy { exact_cap: 0 }
    }
}
