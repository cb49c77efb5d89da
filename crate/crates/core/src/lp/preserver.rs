//! The distance-preserver covering LP over anti-spanners, solved by cutting
//! planes with min-cut separation.

use super::maxflow::min_cut;
use super::simplex::{solve, LinearProgram, LpOutcome, Sense};
use crate::graph;
use crate::instance::{DemandId, EdgeId, Instance};
use crate::rational::Rat;
use num_traits::One;
use std::collections::BTreeSet;

/// An edge set whose removal destroys every shortest path of a demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiSpannerCut {
    pub demand: DemandId,
    pub cut_edges: BTreeSet<EdgeId>,
    /// `sum x_e` over `cut_edges`.
    pub capacity: Rat,
}

/// Edges on some shortest `s ~> t` path: `d(s,u) + l(e) + d(v,t) = d(s,t)`.
pub fn tight_edges(inst: &Instance, demand: DemandId) -> Vec<EdgeId> {
    let d = inst.demand(demand);
    let from = graph::distances_from(inst, d.source, None);
    let to = graph::distances_to(inst, d.sink, None);
    let Some(total) = from[d.sink] else { return Vec::new() };
    inst.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| matches!((from[e.tail], to[e.head]), (Some(a), Some(b)) if a + e.length + b == total))
        .map(|(id, _)| id)
        .collect()
}

/// Minimum `x`-capacity cut of the demand's tight subgraph; returned only
/// when its capacity is below 1 (a violated covering constraint).
///
/// Intended for demands whose bound equals the exact distance.
pub fn separate_antispanner(inst: &Instance, x: &[Rat], demand: DemandId) -> Option<AntiSpannerCut> {
    let d = inst.demand(demand);
    let tight = tight_edges(inst, demand);
    if tight.is_empty() {
        return None;
    }
    let arcs: Vec<_> = tight
        .iter()
        .map(|&e| (inst.edge(e).tail, inst.edge(e).head, x[e].clone()))
        .collect();
    let cut = min_cut(inst.n(), &arcs, d.source, d.sink);
    (cut.value < Rat::one()).then(|| AntiSpannerCut {
        demand,
        cut_edges: cut.cut_arcs.iter().map(|&i| tight[i]).collect(),
        capacity: cut.value,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreserverLp {
    pub x: Vec<Rat>,
    pub value: Rat,
    pub cuts: Vec<AntiSpannerCut>,
    pub rounds: usize,
}

/// `min c.x` subject to `sum_{e in A} x_e >= 1` for every anti-spanner `A`
/// of every demand in `demands`, `x >= 0`.
pub fn solve_preserver_lp(inst: &Instance, demands: &[DemandId]) -> PreserverLp {
    let m = inst.m();
    let mut lp = LinearProgram::new(m);
    lp.objective = inst.costs();
    let mut cuts: Vec<AntiSpannerCut> = Vec::new();
    let mut seen: BTreeSet<BTreeSet<EdgeId>> = BTreeSet::new();
    let mut x = vec![Rat::default(); m];
    let mut value = Rat::default();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut added = false;
        for &d in demands {
            if let Some(cut) = separate_antispanner(inst, &x, d) {
                if seen.insert(cut.cut_edges.clone()) {
                    lp.add_row(cut.cut_edges.iter().map(|&e| (e, Rat::one())).collect(), Sense::Ge, Rat::one());
                    added = true;
                }
                cuts.push(cut);
            }
        }
        if !added {
            break;
        }
        match solve(&lp) {
            LpOutcome::Optimal(sol) => {
                x = sol.x;
                value = sol.value;
            }
            // x = 1 is always feasible and c >= 0 bounds the objective
            other => unreachable!("covering LP cannot be {other:?}"),
        }
    }
    PreserverLp { x, value, cuts, rounds }
}
