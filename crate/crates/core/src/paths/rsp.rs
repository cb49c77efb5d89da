use super::{ConstrainedPath, CostLengthTable, Direction, PathError, RspPolicy};
use crate::graph;
use crate::instance::{EdgeId, Instance, VertexId};
use crate::rational::{one_plus, Rat};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Exact minimum-cost `s ~> t` path of length at most `budget`.
pub fn rsp_exact(
    inst: &Instance,
    s: VertexId,
    t: VertexId,
    budget: u64,
) -> Result<ConstrainedPath, PathError> {
    rsp_exact_with(inst, &inst.costs(), s, t, budget)
}

/// [`rsp_exact`] under an arbitrary cost vector (e.g. bought edges at zero).
pub fn rsp_exact_with(
    inst: &Instance,
    costs: &[Rat],
    s: VertexId,
    t: VertexId,
    budget: u64,
) -> Result<ConstrainedPath, PathError> {
    if s == t {
        return Ok(ConstrainedPath::empty());
    }
    let cap = budget.min(inst.path_length_cap());
    let table = CostLengthTable::build(inst, s, Direction::Forward, costs, cap);
    let path = table
        .path(inst, t, cap)
        .ok_or(PathError::NoFeasiblePath(s, t))?;
    Ok(ConstrainedPath::from_edges(inst, path, costs))
}

/// `(1 + eps, 1)`-approximate restricted shortest path: the length budget is
/// met exactly and the cost is within `1 + eps` of the optimum.
///
/// Costs are scaled by `eps * c* / n`, where `c*` is the smallest bottleneck
/// cost admitting a feasible path (`c* <= OPT <= (n-1) c*`), and a DP over
/// scaled cost levels keeps the minimum length per level.
pub fn rsp_fptas(
    inst: &Instance,
    s: VertexId,
    t: VertexId,
    budget: u64,
    eps: &Rat,
) -> Result<ConstrainedPath, PathError> {
    let costs = inst.costs();
    if s == t {
        return Ok(ConstrainedPath::empty());
    }
    let mut levels: Vec<&Rat> = costs.iter().collect();
    levels.sort();
    levels.dedup();
    let feasible_under = |c: &Rat| {
        let mask: Vec<bool> = costs.iter().map(|x| x <= c).collect();
        graph::distance(inst, s, t, Some(&mask)).is_some_and(|d| d <= budget)
    };
    let Some(hi) = levels.last() else {
        return Err(PathError::NoFeasiblePath(s, t));
    };
    if !feasible_under(hi) {
        return Err(PathError::NoFeasiblePath(s, t));
    }
    let idx = levels.partition_point(|c| !feasible_under(c));
    let bottleneck = levels[idx].clone();

    if bottleneck.is_zero() {
        let mask: Vec<bool> = costs.iter().map(|x| x.is_zero()).collect();
        let path = graph::shortest_path(inst, s, t, Some(&mask)).expect("checked feasible");
        return Ok(ConstrainedPath::from_edges(inst, path, &costs));
    }

    let n = inst.n() as i64;
    let delta = eps * &bottleneck / Rat::from_integer(BigInt::from(n));
    let upper = Rat::from_integer(BigInt::from(n - 1)) * &bottleneck;
    let max_level = (&upper / &delta).floor().to_integer().to_usize().unwrap_or(usize::MAX);
    let scaled: Vec<Option<usize>> = costs
        .iter()
        .map(|c| {
            (c <= &upper).then(|| (c / &delta).floor().to_integer().to_usize().unwrap_or(usize::MAX))
        })
        .collect();

    // dist[level][v]: minimum length of an s ~> v walk of scaled cost `level`.
    let nv = inst.n();
    let mut dist: Vec<Vec<Option<u64>>> = Vec::new();
    let mut link: Vec<Vec<Option<EdgeId>>> = Vec::new();
    for level in 0..=max_level {
        let mut d: Vec<Option<u64>> = vec![None; nv];
        let mut via: Vec<Option<EdgeId>> = vec![None; nv];
        if level == 0 {
            d[s] = Some(0);
        }
        for (e, sc) in scaled.iter().enumerate() {
            let Some(sc) = *sc else { continue };
            if sc == 0 || sc > level {
                continue;
            }
            let edge = inst.edge(e);
            if let Some(base) = dist[level - sc][edge.tail] {
                let nd = base + edge.length;
                if d[edge.head].is_none_or(|cur| nd < cur) {
                    d[edge.head] = Some(nd);
                    via[edge.head] = Some(e);
                }
            }
        }
        // Zero-scaled edges stay inside the level.
        let mut heap: BinaryHeap<Reverse<(u64, VertexId)>> = d
            .iter()
            .enumerate()
            .filter_map(|(v, x)| x.map(|x| Reverse((x, v))))
            .collect();
        while let Some(Reverse((dv, v))) = heap.pop() {
            if d[v] != Some(dv) {
                continue;
            }
            for &e in inst.out_edges(v) {
                if scaled[e] != Some(0) {
                    continue;
                }
                let edge = inst.edge(e);
                let nd = dv + edge.length;
                if d[edge.head].is_none_or(|cur| nd < cur) {
                    d[edge.head] = Some(nd);
                    via[edge.head] = Some(e);
                    heap.push(Reverse((nd, edge.head)));
                }
            }
        }
        let done = d[t].is_some_and(|x| x <= budget);
        dist.push(d);
        link.push(via);
        if done {
            let mut walk = Vec::new();
            let (mut at, mut lv) = (t, level);
            while !(at == s && lv == 0) {
                let e = link[lv][at].expect("reached state has a link");
                walk.push(e);
                lv -= scaled[e].unwrap();
                at = inst.edge(e).tail;
            }
            walk.reverse();
            let path = graph::simplify_walk(inst, &walk);
            return Ok(ConstrainedPath::from_edges(inst, path, &costs));
        }
    }
    // The bottleneck path has scaled cost at most `max_level`.
    unreachable!("bottleneck path must be found within the scaled range")
}

/// Dispatches to the exact DP or the FPTAS according to `policy`.
pub fn rsp(
    inst: &Instance,
    s: VertexId,
    t: VertexId,
    budget: u64,
    eps: &Rat,
    policy: &RspPolicy,
) -> Result<ConstrainedPath, PathError> {
    if budget <= policy.exact_cap {
        rsp_exact(inst, s, t, budget)
    } else {
        rsp_fptas(inst, s, t, budget, eps)
    }
}

/// The shortest `s ~> t` path among those of cost at most `cost_budget`,
/// found by binary search over the length budget in `[1, n * max length]`.
///
/// The returned path costs at most `cost_budget * (1 + eps)` and is no longer
/// than any path of cost at most `cost_budget`.
pub fn min_length_under_cost(
    inst: &Instance,
    s: VertexId,
    t: VertexId,
    cost_budget: &Rat,
    eps: &Rat,
    policy: &RspPolicy,
) -> Result<ConstrainedPath, PathError> {
    if s == t {
        return Ok(ConstrainedPath::empty());
    }
    let limit = cost_budget * one_plus(eps);
    let probe = |budget: u64| -> Option<ConstrainedPath> {
        rsp(inst, s, t, budget, eps, policy)
            .ok()
            .filter(|p| p.total_cost <= limit)
    };
    let mut hi = inst.path_length_cap();
    let mut found = probe(hi).ok_or(PathError::NoCheapPath(s, t))?;
    let mut lo = 1u64;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match probe(mid) {
            Some(p) => {
                hi = mid;
                found = p;
            }
            None => lo = mid + 1,
        }
    }
    Ok(found)
}
