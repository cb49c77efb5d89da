//! Local graphs and the thick/thin split of demand pairs.

use crate::instance::{DemandId, EdgeId, Instance, VertexId};
use crate::paths::{CostLengthTable, Direction};
use crate::rational::{snap_f64, Rat};
use std::collections::BTreeSet;

/// Vertices and edges lying on some `s ~> t` walk within the demand's
/// distance bound and (optionally) within a cost budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalGraph {
    pub demand: DemandId,
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

impl LocalGraph {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// `budget = None` drops the cost condition (distance-preserver local graphs).
pub fn local_graph(inst: &Instance, demand: DemandId, budget: Option<&Rat>) -> LocalGraph {
    local_graph_with(inst, &inst.costs(), demand, budget)
}

pub fn local_graph_with(
    inst: &Instance,
    costs: &[Rat],
    demand: DemandId,
    budget: Option<&Rat>,
) -> LocalGraph {
    let d = *inst.demand(demand);
    let bound = d.bound.min(inst.path_length_cap());
    let costs: Vec<Rat> = match budget {
        Some(_) => costs.to_vec(),
        None => vec![Rat::default(); inst.m()],
    };
    let fwd = CostLengthTable::build(inst, d.source, Direction::Forward, &costs, bound);
    let bwd = CostLengthTable::build(inst, d.sink, Direction::Backward, &costs, bound);
    let within = |c: Rat| budget.is_none_or(|b| c <= *b);

    let mut vertices = BTreeSet::new();
    for v in 0..inst.n() {
        let best = (0..=bound)
            .filter_map(|l1| Some(fwd.cost(v, l1)? + bwd.cost(v, bound - l1)?))
            .min();
        if best.is_some_and(within) {
            vertices.insert(v);
        }
    }
    let mut edges = BTreeSet::new();
    for (id, e) in inst.edges().iter().enumerate() {
        if e.length > bound || !vertices.contains(&e.tail) || !vertices.contains(&e.head) {
            continue;
        }
        let rest = bound - e.length;
        let best = (0..=rest)
            .filter_map(|l1| Some(fwd.cost(e.tail, l1)? + &costs[id] + bwd.cost(e.head, rest - l1)?))
            .min();
        if best.is_some_and(within) {
            edges.insert(id);
        }
    }
    LocalGraph {
        demand,
        vertices,
        edges,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub thick: BTreeSet<DemandId>,
    pub thin: BTreeSet<DemandId>,
    pub beta: f64,
    pub cost_budget: Rat,
    /// `ceil(n / beta)`: a pair is thick iff its local graph has at least
    /// this many vertices.
    pub threshold: usize,
}

/// `beta = n^{3/5}`.
pub fn pairwise_beta(n: usize) -> f64 {
    (n as f64).powf(0.6)
}

/// `L = tau / n^{4/5}`.
pub fn cost_budget(n: usize, tau: &Rat) -> Rat {
    tau / snap_f64((n as f64).powf(0.8))
}

/// `ceil(n / beta)`, with a `1e-9` tolerance so exact powers such as
/// `32 / 32^{3/5} = 4` do not round up on floating-point noise.
pub fn thick_threshold(n: usize, beta: f64) -> usize {
    ((n as f64 / beta) - 1e-9).ceil().max(0.0) as usize
}

pub fn classify_pairs(inst: &Instance, tau: &Rat) -> Classification {
    let all: Vec<DemandId> = (0..inst.k()).collect();
    classify_subset(inst, &inst.costs(), tau, &all)
}

/// Classification of `demands` only, under a cost vector (bought edges may
/// be priced at zero).
pub fn classify_subset(inst: &Instance, costs: &[Rat], tau: &Rat, demands: &[DemandId]) -> Classification {
    let n = inst.n();
    let beta = pairwise_beta(n);
    let budget = cost_budget(n, tau);
    let threshold = thick_threshold(n, beta);
    let mut thick = BTreeSet::new();
    let mut thin = BTreeSet::new();
    for &id in demands {
        let lg = local_graph_with(inst, costs, id, Some(&budget));
        if lg.vertices.len() >= threshold {
            thick.insert(id);
        } else {
            thin.insert(id);
        }
    }
    Classification {
        thick,
        thin,
        beta,
        cost_budget: budget,
        threshold,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;
    use crate::rational::{int, ratio};

    #[test]
    fn single_edge_local_graph() {
        let inst = parse_instance("graph 2 1\ne 0 1 1 1\ndemands 1\nd 0 1 1\n").unwrap();
        let lg = local_graph(&inst, 0, Some(&int(1)));
        assert_eq!(lg.vertices, [0, 1].into_iter().collect());
        assert_eq!(lg.edges, [0].into_iter().collect());
        assert!(local_graph(&inst, 0, Some(&ratio(1, 2))).is_empty());
    }

    #[test]
    fn parameters_at_n32() {
        assert_eq!(thick_threshold(32, pairwise_beta(32)), 4);
        assert_eq!(cost_budget(32, &int(32)), int(2));
    }

    #[test]
    fn empty_local_graph_is_thin() {
        let inst = parse_instance("graph 3 2\ne 0 1 5 1\ne 1 2 5 1\ndemands 1\nd 0 2 2\n").unwrap();
        let c = classify_pairs(&inst, &int(1));
        assert!(c.thin.contains(&0) && c.thick.is_empty());
    }
}
