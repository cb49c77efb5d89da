use super::{ConstrainedPath, PathError};
use crate::graph;
use crate::instance::{EdgeId, Instance, VertexId};
use crate::rational::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Minimum-cost `s ~> t` path with length at most `length_budget` (exact) and
/// price at most `price_budget * (1 + eps)`.
///
/// The returned cost is no larger than that of any path meeting both budgets
/// exactly.
pub fn rcsp_price(
    inst: &Instance,
    s: VertexId,
    t: VertexId,
    length_budget: u64,
    prices: &[Rat],
    price_budget: &Rat,
    eps: &Rat,
) -> Result<ConstrainedPath, PathError> {
    rcsp_with(inst, &inst.costs(), prices, s, t, length_budget, price_budget, eps)
}

struct Label {
    vertex: VertexId,
    length: u64,
    bucket: u64,
    objective: Rat,
    parent: Option<(usize, EdgeId)>,
    alive: bool,
}

/// [`rcsp_price`] with an arbitrary objective vector. Column generation uses
/// this with the dual prices as objective and the edge costs as the priced
/// resource.
///
/// Prices are rounded down to multiples of `eps * Z / n`, giving at most
/// `n / eps + 1` buckets; labels `(length, bucket, objective)` are pruned by
/// Pareto dominance per vertex and settled in length order.
#[allow(clippy::too_many_arguments)]
pub fn rcsp_with(
    inst: &Instance,
    objective: &[Rat],
    prices: &[Rat],
    s: VertexId,
    t: VertexId,
    length_budget: u64,
    price_budget: &Rat,
    eps: &Rat,
) -> Result<ConstrainedPath, PathError> {
    let finish = |path: Vec<EdgeId>| {
        let mut cp = ConstrainedPath::from_edges(inst, path, objective);
        cp.total_price = Some(cp.edge_ids.iter().fold(Rat::zero(), |a, &e| a + &prices[e]));
        cp
    };
    if s == t {
        return Ok(finish(Vec::new()));
    }
    let n = inst.n().max(1);
    let (buckets, bucket_cap) = if price_budget.is_zero() {
        zero_budget_buckets(prices)
    } else {
        let delta = eps * price_budget / Rat::from_integer(BigInt::from(n));
        bucketize(prices, price_budget, &delta)
    };
    label_search(inst, objective, s, t, length_budget, &buckets, bucket_cap).map(finish)
}

/// Like [`rcsp_with`] but the price budget is met exactly: prices are scaled
/// to integers by the common denominator, so buckets lose nothing. The label
/// count is bounded by the integer price range rather than `n / eps`.
#[allow(clippy::too_many_arguments)]
pub fn rcsp_exact_with(
    inst: &Instance,
    objective: &[Rat],
    prices: &[Rat],
    s: VertexId,
    t: VertexId,
    length_budget: u64,
    price_budget: &Rat,
) -> Result<ConstrainedPath, PathError> {
    let finish = |path: Vec<EdgeId>| {
        let mut cp = ConstrainedPath::from_edges(inst, path, objective);
        cp.total_price = Some(cp.edge_ids.iter().fold(Rat::zero(), |a, &e| a + &prices[e]));
        cp
    };
    if s == t {
        return Ok(finish(Vec::new()));
    }
    let (buckets, bucket_cap) = if price_budget.is_zero() {
        zero_budget_buckets(prices)
    } else {
        let denom = prices
            .iter()
            .chain(std::iter::once(price_budget))
            .fold(BigInt::from(1), |acc, p| acc.lcm(p.denom()));
        bucketize(prices, price_budget, &Rat::new(BigInt::from(1), denom))
    };
    label_search(inst, objective, s, t, length_budget, &buckets, bucket_cap).map(finish)
}

fn zero_budget_buckets(prices: &[Rat]) -> (Vec<Option<u64>>, u64) {
    (prices.iter().map(|p| p.is_zero().then_some(0)).collect(), 0)
}

/// `(usable, bucket)` per edge with prices floored to multiples of `delta`;
/// edges pricier than the budget are unusable.
fn bucketize(prices: &[Rat], price_budget: &Rat, delta: &Rat) -> (Vec<Option<u64>>, u64) {
    let cap = (price_budget / delta).floor().to_integer().to_u64().unwrap_or(u64::MAX);
    let b = prices
        .iter()
        .map(|p| (p <= price_budget).then(|| (p / delta).floor().to_integer().to_u64().unwrap_or(u64::MAX)))
        .collect();
    (b, cap)
}

/// Pareto label setting over `(length, bucket, objective)`; returns the
/// simplified walk of the best label at `t`.
fn label_search(
    inst: &Instance,
    objective: &[Rat],
    s: VertexId,
    t: VertexId,
    length_budget: u64,
    buckets: &[Option<u64>],
    bucket_cap: u64,
) -> Result<Vec<EdgeId>, PathError> {
    let mut labels: Vec<Label> = Vec::new();
    let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); inst.n()];
    let mut heap: BinaryHeap<Reverse<(u64, u64, usize)>> = BinaryHeap::new();
    labels.push(Label {
        vertex: s,
        length: 0,
        bucket: 0,
        objective: Rat::zero(),
        parent: None,
        alive: true,
    });
    at_vertex[s].push(0);
    heap.push(Reverse((0, 0, 0)));

    while let Some(Reverse((_, _, id))) = heap.pop() {
        if !labels[id].alive {
            continue;
        }
        let v = labels[id].vertex;
        if v == t {
            continue;
        }
        for &e in inst.out_edges(v) {
            let Some(b) = buckets[e] else { continue };
            let edge = inst.edge(e);
            let length = labels[id].length.saturating_add(edge.length);
            let bucket = labels[id].bucket.saturating_add(b);
            if length > length_budget || bucket > bucket_cap {
                continue;
            }
            let obj = &labels[id].objective + &objective[e];
            let w = edge.head;
            let dominated = at_vertex[w].iter().any(|&o| {
                let l = &labels[o];
                l.alive && l.length <= length && l.bucket <= bucket && l.objective <= obj
            });
            if dominated {
                continue;
            }
            let new_id = labels.len();
            for &o in &at_vertex[w] {
                let l = &mut labels[o];
                if l.alive && length <= l.length && bucket <= l.bucket && obj <= l.objective {
                    l.alive = false;
                }
            }
            at_vertex[w].retain(|&o| labels[o].alive);
            labels.push(Label {
                vertex: w,
                length,
                bucket,
                objective: obj,
                parent: Some((id, e)),
                alive: true,
            });
            at_vertex[w].push(new_id);
            heap.push(Reverse((length, bucket, new_id)));
        }
    }

    let best = at_vertex[t]
        .iter()
        .copied()
        .min_by(|&a, &b| {
            let (la, lb) = (&labels[a], &labels[b]);
            la.objective
                .cmp(&lb.objective)
                .then(la.length.cmp(&lb.length))
                .then(la.bucket.cmp(&lb.bucket))
        })
        .ok_or(PathError::NoFeasiblePath(s, t))?;
    let mut walk = Vec::new();
    let mut cur = best;
    while let Some((parent, e)) = labels[cur].parent {
        walk.push(e);
        cur = parent;
    }
    walk.reverse();
    Ok(graph::simplify_walk(inst, &walk))
}
