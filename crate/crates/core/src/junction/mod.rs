//! Distance-preserving junction trees: edge sets routing several demands
//! through one root within their distance bounds.

mod cover;
mod exact;
mod expand;
mod greedy;
mod layered;

pub use cover::{greedy_jt_cover, greedy_jt_cover_traced, JtCover};
pub use exact::{min_density_jt_exact, DEFAULT_EXACT_CAP};
pub use expand::{unit_length_expand, ExpandedGraph};
pub use greedy::min_density_jt_greedy;
pub use layered::{build_layered_graph, LayerVertex, LayeredArc, LayeredGraph};

use crate::graph;
use crate::instance::{DemandId, EdgeId, Instance, VertexId};
use crate::rational::Rat;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JunctionTree {
    pub root: VertexId,
    pub edge_ids: BTreeSet<EdgeId>,
    /// Non-empty; every member routes through `root` within its bound.
    pub satisfied: BTreeSet<DemandId>,
    /// Cost under the prices the search was run with.
    pub cost: Rat,
    /// `cost / |satisfied|`.
    pub density: Rat,
}

impl JunctionTree {
    pub(crate) fn new(
        root: VertexId,
        edge_ids: BTreeSet<EdgeId>,
        satisfied: BTreeSet<DemandId>,
        cost: Rat,
    ) -> Self {
        let density = &cost / Rat::from_integer(satisfied.len().into());
        JunctionTree {
            root,
            edge_ids,
            satisfied,
            cost,
            density,
        }
    }

    /// Re-checks every claimed demand against the tree's own edges.
    pub fn verify(&self, inst: &Instance) -> bool {
        let mask = graph::mask_of(inst.m(), &self.edge_ids);
        let candidates: Vec<DemandId> = self.satisfied.iter().copied().collect();
        through_root_satisfied(inst, &mask, self.root, &candidates).len() == candidates.len()
            && !self.satisfied.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Exact,
    Greedy,
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Backend::Exact),
            "greedy" => Ok(Backend::Greedy),
            other => Err(format!("unknown junction-tree backend `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JtError {
    #[error("no root connects any active demand within its bound")]
    NoneSatisfiable,
    #[error("exact junction-tree search supports at most {cap} edges, instance has {m}")]
    ExactCapExceeded { m: usize, cap: usize },
}

/// Search restrictions shared by both backends.
#[derive(Debug, Clone, Default)]
pub struct JtQuery<'a> {
    /// Per-edge prices; instance costs when absent.
    pub prices: Option<&'a [Rat]>,
    /// Candidate roots; all vertices when absent.
    pub roots: Option<&'a [VertexId]>,
}

impl JtQuery<'_> {
    pub(crate) fn prices(&self, inst: &Instance) -> Vec<Rat> {
        self.prices.map(<[Rat]>::to_vec).unwrap_or_else(|| inst.costs())
    }

    pub(crate) fn roots(&self, inst: &Instance) -> Vec<VertexId> {
        self.roots.map(<[VertexId]>::to_vec).unwrap_or_else(|| (0..inst.n()).collect())
    }
}

/// Dispatches to the exact or greedy search.
pub fn min_density_jt(
    inst: &Instance,
    active: &[DemandId],
    query: &JtQuery<'_>,
    backend: Backend,
) -> Result<JunctionTree, JtError> {
    match backend {
        Backend::Exact => min_density_jt_exact(inst, active, query, DEFAULT_EXACT_CAP),
        Backend::Greedy => min_density_jt_greedy(inst, active, query),
    }
}

/// Demands `(s, t)` among `candidates` with `d_F(s, r) + d_F(r, t) <= bound`.
pub fn through_root_satisfied(
    inst: &Instance,
    mask: &[bool],
    root: VertexId,
    candidates: &[DemandId],
) -> Vec<DemandId> {
    let to_root = graph::distances_to(inst, root, Some(mask));
    let from_root = graph::distances_from(inst, root, Some(mask));
    candidates
        .iter()
        .copied()
        .filter(|&id| {
            let d = inst.demand(id);
            matches!((to_root[d.source], from_root[d.sink]), (Some(a), Some(b)) if a + b <= d.bound)
        })
        .collect()
}

/// Strict preference order: lower density, then more satisfied demands,
/// then smaller root, then fewer edges, then the lexicographically smaller
/// edge list.
pub(crate) fn better(a: &JunctionTree, b: &JunctionTree) -> bool {
    let lhs = &a.cost * Rat::from_integer(b.satisfied.len().into());
    let rhs = &b.cost * Rat::from_integer(a.satisfied.len().into());
    match lhs.cmp(&rhs) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => {
            (std::cmp::Reverse(a.satisfied.len()), a.root, a.edge_ids.len(), &a.edge_ids)
                < (std::cmp::Reverse(b.satisfied.len()), b.root, b.edge_ids.len(), &b.edge_ids)
        }
    }
}

pub(crate) fn pick_best(trees: impl IntoIterator<Item = JunctionTree>) -> Option<JunctionTree> {
    trees.into_iter().fold(None, |best, t| match best {
        Some(b) if !better(&t, &b) => Some(b),
        _ => Some(t),
    })
}
