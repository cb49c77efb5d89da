use super::{min_density_jt, Backend, JtError, JtQuery, JunctionTree};
use crate::graph;
use crate::instance::{DemandId, EdgeId, Instance, VertexId};
use crate::rational::Rat;
use crate::solution::{resolved_by_mask, Phase, Solution};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone)]
pub struct JtCover {
    pub solution: Solution,
    /// Trees in purchase order; costs are incremental (bought edges priced 0).
    pub trees: Vec<JunctionTree>,
}

/// Repeatedly buys a minimum-density junction tree over the demands the
/// bought edges do not yet resolve, pricing bought edges at zero.
pub fn greedy_jt_cover(inst: &Instance, demands: &[DemandId], backend: Backend) -> Result<Solution, JtError> {
    greedy_jt_cover_traced(inst, demands, backend, None).map(|c| c.solution)
}

/// [`greedy_jt_cover`] with optional root restriction and the purchase trace.
pub fn greedy_jt_cover_traced(
    inst: &Instance,
    demands: &[DemandId],
    backend: Backend,
    roots: Option<&[VertexId]>,
) -> Result<JtCover, JtError> {
    let mut bought: BTreeSet<EdgeId> = BTreeSet::new();
    let mut trees = Vec::new();
    loop {
        let mask = graph::mask_of(inst.m(), &bought);
        let done: BTreeSet<DemandId> = resolved_by_mask(inst, &mask, demands).into_iter().collect();
        let active: Vec<DemandId> = demands.iter().copied().filter(|d| !done.contains(d)).collect();
        if active.is_empty() {
            break;
        }
        let prices: Vec<Rat> = inst
            .edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| if bought.contains(&e) { Rat::default() } else { edge.cost.clone() })
            .collect();
        let query = JtQuery {
            prices: Some(&prices),
            roots,
        };
        let tree = min_density_jt(inst, &active, &query, backend)?;
        bought.extend(tree.edge_ids.iter().copied());
        trees.push(tree);
    }
    let tags: BTreeMap<EdgeId, Phase> = bought.iter().map(|&e| (e, Phase::Junction)).collect();
    Ok(JtCover {
        solution: Solution::tagged(inst, tags),
        trees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;
    use crate::junction::min_density_jt_exact;
    use crate::rational::int;

    #[test]
    fn single_demand_is_one_tree() {
        let inst = parse_instance("graph 3 3\ne 0 2 10 1\ne 0 1 1 1\ne 1 2 1 1\ndemands 1\nd 0 2 2\n").unwrap();
        for backend in [Backend::Exact, Backend::Greedy] {
            let c = greedy_jt_cover_traced(&inst, &[0], backend, None).unwrap();
            assert_eq!(c.trees.len(), 1);
            let best = min_density_jt_exact(&inst, &[0], &JtQuery::default(), 16).unwrap();
            assert_eq!(c.solution.total_cost, best.cost);
            assert!(c.solution.is_feasible(&inst));
        }
    }

    #[test]
    fn disjoint_components_sum() {
        // component A: 0 -> 1 (3) or 0 -> 2 -> 1 (1 + 1); component B: 3 -> 4 (5)
        let inst = parse_instance(
            "graph 5 4\ne 0 1 3 1\ne 0 2 1 1\ne 2 1 1 1\ne 3 4 5 1\ndemands 2\nd 0 1 2\nd 3 4 1\n",
        )
        .unwrap();
        let sol = greedy_jt_cover(&inst, &[0, 1], Backend::Exact).unwrap();
        assert_eq!(sol.total_cost, int(7));
    }
}
