use super::{pick_best, through_root_satisfied, JtError, JtQuery, JunctionTree};
use crate::graph;
use crate::instance::{DemandId, EdgeId, Instance, VertexId};
use crate::rational::Rat;
use rayon::prelude::*;
use std::collections::BTreeSet;

pub const DEFAULT_EXACT_CAP: usize = 16;

/// Global minimum of `cost(F) / |demands routed through r by F|` over roots
/// `r` and non-empty edge sets `F`.
///
/// Per root only edges lying on some bound-respecting `s ~> r ~> t` walk in
/// the full graph can help, so subsets of those are enumerated.
pub fn min_density_jt_exact(
    inst: &Instance,
    active: &[DemandId],
    query: &JtQuery<'_>,
    cap: usize,
) -> Result<JunctionTree, JtError> {
    if inst.m() > cap {
        return Err(JtError::ExactCapExceeded { m: inst.m(), cap });
    }
    let prices = query.prices(inst);
    let trees: Vec<Option<JunctionTree>> = query
        .roots(inst)
        .into_par_iter()
        .map(|r| best_for_root(inst, active, &prices, r))
        .collect();
    pick_best(trees.into_iter().flatten()).ok_or(JtError::NoneSatisfiable)
}

fn best_for_root(inst: &Instance, active: &[DemandId], prices: &[Rat], r: VertexId) -> Option<JunctionTree> {
    let to_r = graph::distances_to(inst, r, None);
    let from_r = graph::distances_from(inst, r, None);
    let mut relevant: BTreeSet<EdgeId> = BTreeSet::new();
    let mut useful = Vec::new();
    for &id in active {
        let d = *inst.demand(id);
        let (Some(a), Some(b)) = (to_r[d.source], from_r[d.sink]) else { continue };
        if a + b > d.bound {
            continue;
        }
        useful.push(id);
        let from_s = graph::distances_from(inst, d.source, None);
        let to_t = graph::distances_to(inst, d.sink, None);
        for (e, edge) in inst.edges().iter().enumerate() {
            let on_in = matches!((from_s[edge.tail], to_r[edge.head]),
                (Some(x), Some(y)) if x + edge.length + y + b <= d.bound);
            let on_out = matches!((from_r[edge.tail], to_t[edge.head]),
                (Some(x), Some(y)) if a + x + edge.length + y <= d.bound);
            if on_in || on_out {
                relevant.insert(e);
            }
        }
    }
    if useful.is_empty() {
        return None;
    }
    let relevant: Vec<EdgeId> = relevant.into_iter().collect();
    let mut best: Option<JunctionTree> = None;
    let mut mask = vec![false; inst.m()];
    for bits in 0u32..(1u32 << relevant.len()) {
        for (i, &e) in relevant.iter().enumerate() {
            mask[e] = bits >> i & 1 == 1;
        }
        let sat = through_root_satisfied(inst, &mask, r, &useful);
        if sat.is_empty() {
            continue;
        }
        let edges: BTreeSet<EdgeId> = relevant
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let cost = edges.iter().fold(Rat::default(), |acc, &e| acc + &prices[e]);
        let tree = JunctionTree::new(r, edges, sat.into_iter().collect(), cost);
        best = pick_best(best.into_iter().chain(std::iter::once(tree)));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::star;
    use super::*;
    use crate::instance::parse_instance;
    use crate::rational::int;

    #[test]
    fn star_takes_all_four_edges() {
        let inst = star();
        let t = min_density_jt_exact(&inst, &[0, 1], &JtQuery::default(), 16).unwrap();
        assert_eq!(t.root, 0);
        assert_eq!(t.edge_ids.len(), 4);
        assert_eq!(t.density, int(2));
        assert!(t.verify(&inst));
    }

    #[test]
    fn unique_path_single_demand() {
        let inst = parse_instance("graph 3 2\ne 0 1 2 1\ne 1 2 3 1\ndemands 1\nd 0 2 2\n").unwrap();
        let t = min_density_jt_exact(&inst, &[0], &JtQuery::default(), 16).unwrap();
        assert_eq!((t.edge_ids.len(), t.density.clone()), (2, int(5)));
    }

    #[test]
    fn free_edges_never_hurt() {
        let inst = star();
        let base = min_density_jt_exact(&inst, &[0, 1], &JtQuery::default(), 16).unwrap();
        let prices = vec![int(0), int(1), int(0), int(1)];
        let q = JtQuery { prices: Some(&prices), roots: None };
        let cheap = min_density_jt_exact(&inst, &[0, 1], &q, 16).unwrap();
        assert!(cheap.density <= base.density);
    }

    #[test]
    fn errors() {
        let inst = parse_instance("graph 3 1\ne 0 1 1 1\ndemands 1\nd 0 1 1\n").unwrap();
        assert_eq!(
            min_density_jt_exact(&inst, &[0], &JtQuery::default(), 0),
            Err(JtError::ExactCapExceeded { m: 1, cap: 0 })
        );
        assert_eq!(
            min_density_jt_exact(&inst, &[], &JtQuery::default(), 16),
            Err(JtError::NoneSatisfiable)
        );
    }
}
