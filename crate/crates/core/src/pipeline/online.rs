use super::{Manifest, PipelineConfig, PipelineError};
use crate::graph;
use crate::instance::{Demand, EdgeId, Instance, InstanceError};
use crate::junction::{min_density_jt, JtQuery};
use crate::rational::{fmt_rat, Rat};
use crate::solution::{resolved_by_mask, Phase, Solution};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct OnlineState {
    /// Only ever grows.
    pub bought_edges: BTreeSet<EdgeId>,
    pub arrivals: Vec<Demand>,
    /// Incremental cost paid at each arrival.
    pub cost_ledger: Vec<Rat>,
    /// `bought_edges` after each arrival.
    pub history: Vec<BTreeSet<EdgeId>>,
}

#[derive(Debug, Error)]
pub enum OnlineError {
    #[error(transparent)]
    Invalid(#[from] InstanceError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

/// Greedy online augmentation: an arrival already resolved by the bought
/// edges is free; otherwise a minimum-density junction tree for it is bought
/// with bought edges priced at zero.
pub struct OnlineSolver {
    graph: Instance,
    cfg: PipelineConfig,
    state: OnlineState,
}

impl OnlineSolver {
    pub fn new(graph: &Instance, cfg: &PipelineConfig) -> Self {
        OnlineSolver {
            graph: graph.with_demands(Vec::new()).expect("empty demand set"),
            cfg: cfg.clone(),
            state: OnlineState::default(),
        }
    }

    pub fn state(&self) -> &OnlineState {
        &self.state
    }

    /// Instance holding every arrival so far.
    pub fn instance(&self) -> Instance {
        self.graph.with_demands(self.state.arrivals.clone()).expect("arrivals were validated")
    }

    /// Processes one arrival and returns its incremental cost.
    pub fn arrive(&mut self, demand: Demand) -> Result<Rat, OnlineError> {
        self.graph.check_demand(self.state.arrivals.len(), &demand)?;
        self.state.arrivals.push(demand);
        let inst = self.instance();
        let id = inst.k() - 1;
        let mask = graph::mask_of(inst.m(), &self.state.bought_edges);
        let cost = if resolved_by_mask(&inst, &mask, &[id]).is_empty() {
            let prices: Vec<Rat> = inst
                .edges()
                .iter()
                .enumerate()
                .map(|(e, edge)| if self.state.bought_edges.contains(&e) { Rat::zero() } else { edge.cost.clone() })
                .collect();
            let query = JtQuery { prices: Some(&prices), roots: None };
            let tree = min_density_jt(&inst, &[id], &query, self.cfg.backend).map_err(PipelineError::from)?;
            let new: BTreeSet<EdgeId> = tree.edge_ids.difference(&self.state.bought_edges).copied().collect();
            self.state.bought_edges.extend(new.iter().copied());
            inst.cost_of(&new)
        } else {
            Rat::zero()
        };
        self.state.cost_ledger.push(cost.clone());
        self.state.history.push(self.state.bought_edges.clone());
        Ok(cost)
    }

    pub fn finish(self) -> OnlineRun {
        let inst = self.instance();
        let tags: BTreeMap<EdgeId, Phase> = self.state.bought_edges.iter().map(|&e| (e, Phase::Online)).collect();
        let solution = Solution::tagged(&inst, tags);
        let mut manifest = Manifest::default();
        manifest.push("mode", "online");
        manifest.push("seed", self.cfg.seed);
        manifest.push("eps", fmt_rat(&self.cfg.eps));
        for (i, (d, c)) in self.state.arrivals.iter().zip(&self.state.cost_ledger).enumerate() {
            manifest.push(format!("arrival[{i}]"), format!("{} {} {} cost={}", d.source, d.sink, d.bound, fmt_rat(c)));
        }
        manifest.push("cost", fmt_rat(&solution.total_cost));
        OnlineRun {
            instance: inst,
            state: self.state,
            solution,
            manifest,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OnlineRun {
    /// The graph with every arrival as a demand, in arrival order.
    pub instance: Instance,
    pub state: OnlineState,
    pub solution: Solution,
    pub manifest: Manifest,
}

pub fn online_solve(graph: &Instance, arrivals: &[Demand], cfg: &PipelineConfig) -> Result<OnlineRun, OnlineError> {
    let mut solver = OnlineSolver::new(graph, cfg);
    for &d in arrivals {
        solver.arrive(d)?;
    }
    Ok(solver.finish())
}
