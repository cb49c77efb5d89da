use super::{pick_best, through_root_satisfied, JtError, JtQuery, JunctionTree};
use crate::graph;
use crate::instance::{DemandId, EdgeId, Instance, VertexId};
use crate::paths::{CostLengthTable, Direction};
use crate::rational::Rat;
use rayon::prelude::*;
use std::collections::BTreeSet;

/// Root and budget-split heuristic for the minimum-density junction tree.
///
/// Per root, each demand gets its cheapest `s ~> r ~> t` connection over all
/// splits `l1 + l2 <= bound`; demands are sorted by that cost and every
/// prefix is scored by the true cost of the union of its paths.
pub fn min_density_jt_greedy(
    inst: &Instance,
    active: &[DemandId],
    query: &JtQuery<'_>,
) -> Result<JunctionTree, JtError> {
    let prices = query.prices(inst);
    let cap = active
        .iter()
        .map(|&id| inst.demand(id).bound)
        .max()
        .unwrap_or(0)
        .min(inst.path_length_cap());
    let trees: Vec<Option<JunctionTree>> = query
        .roots(inst)
        .into_par_iter()
        .map(|r| best_for_root(inst, active, &prices, r, cap))
        .collect();
    pick_best(trees.into_iter().flatten()).ok_or(JtError::NoneSatisfiable)
}

fn best_for_root(
    inst: &Instance,
    active: &[DemandId],
    prices: &[Rat],
    r: VertexId,
    cap: u64,
) -> Option<JunctionTree> {
    let into = CostLengthTable::build(inst, r, Direction::Backward, prices, cap);
    let out_of = CostLengthTable::build(inst, r, Direction::Forward, prices, cap);
    let mut options: Vec<(Rat, DemandId, Vec<EdgeId>)> = Vec::new();
    for &id in active {
        let d = *inst.demand(id);
        let bound = d.bound.min(cap);
        let split = (0..=bound)
            .filter_map(|l1| {
                let c = into.cost(d.source, l1)? + out_of.cost(d.sink, bound - l1)?;
                Some((c, l1))
            })
            .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        let Some((c, l1)) = split else { continue };
        let mut path = into.path(inst, d.source, l1).expect("split entry exists");
        path.extend(out_of.path(inst, d.sink, bound - l1).expect("split entry exists"));
        options.push((c, id, path));
    }
    options.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut union: BTreeSet<EdgeId> = BTreeSet::new();
    let mut best: Option<JunctionTree> = None;
    for (_, _, path) in &options {
        union.extend(path.iter().copied());
        let mask = graph::mask_of(inst.m(), &union);
        let sat = through_root_satisfied(inst, &mask, r, active);
        if sat.is_empty() {
            continue;
        }
        let cost = union.iter().fold(Rat::default(), |acc, &e| acc + &prices[e]);
        let tree = JunctionTree::new(r, union.clone(), sat.into_iter().collect(), cost);
        best = pick_best(best.into_iter().chain(std::iter::once(tree)));
    }
    best
}
