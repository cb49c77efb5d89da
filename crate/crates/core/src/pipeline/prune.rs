use crate::graph;
use crate::instance::{DemandId, EdgeId, Instance};
use crate::solution::{resolved_by_mask, Solution};
use std::collections::BTreeMap;

/// Reverse-delete: edges are visited by descending cost (ties by ascending
/// id) and dropped when every demand stays resolved without them. The result
/// is inclusion-minimal.
pub fn prune_solution(inst: &Instance, sol: &Solution) -> Solution {
    let all: Vec<DemandId> = (0..inst.k()).collect();
    let mut order: Vec<EdgeId> = sol.edge_ids.iter().copied().collect();
    order.sort_by(|&a, &b| inst.edge(b).cost.cmp(&inst.edge(a).cost).then(a.cmp(&b)));
    let mut mask = graph::mask_of(inst.m(), &sol.edge_ids);
    for e in order {
        mask[e] = false;
        if resolved_by_mask(inst, &mask, &all).len() != all.len() {
            mask[e] = true;
        }
    }
    let tags: BTreeMap<EdgeId, _> = sol
        .phase_tags
        .iter()
        .filter(|(e, _)| mask[**e])
        .map(|(&e, &p)| (e, p))
        .collect();
    let kept = (0..inst.m()).filter(|&e| mask[e]).collect();
    Solution::new(inst, kept, tags)
}
