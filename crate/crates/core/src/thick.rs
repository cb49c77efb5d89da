//! Hitting-set sampling and path addition for thick pairs.

use crate::instance::{DemandId, EdgeId, Instance, VertexId};
use crate::local::cost_budget;
use crate::paths::{min_length_under_cost, RspPolicy};
use crate::rational::{one_plus, Rat};
use crate::solution::resolved_by_mask;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    /// `ceil(3 beta ln n)` independent uniform draws, with repetition.
    pub draws: Vec<VertexId>,
    pub distinct: BTreeSet<VertexId>,
    pub seed: u64,
}

/// `ceil(3 beta ln n)`.
pub fn sample_count(n: usize, beta: f64) -> usize {
    if n <= 1 {
        return 0;
    }
    (3.0 * beta * (n as f64).ln() - 1e-9).ceil().max(0.0) as usize
}

pub fn sample_hitters(n: usize, beta: f64, seed: u64) -> SampleSet {
    let k = sample_count(n, beta);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<VertexId> = (0..k).map(|_| rng.gen_range(0..n)).collect();
    SampleSet {
        distinct: draws.iter().copied().collect(),
        draws,
        seed,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThickOutcome {
    pub edges: BTreeSet<EdgeId>,
    pub samples: SampleSet,
    /// Thick pairs the returned edges resolve on their own.
    pub resolved: BTreeSet<DemandId>,
    pub unresolved: BTreeSet<DemandId>,
    pub cost: Rat,
    /// `|distinct samples| * (|S| + |T|) * L * (1 + eps)`; `cost` never exceeds it.
    pub cost_bound: Rat,
}

/// For every distinct sampled `u`, adds the shortest `s ~> u` path of cost at
/// most `L (1 + eps)` for each source `s` of a thick pair, and likewise
/// `u ~> t` for each sink `t`.
pub fn resolve_thick(
    inst: &Instance,
    thick_pairs: &BTreeSet<DemandId>,
    tau: &Rat,
    eps: &Rat,
    seed: u64,
) -> ThickOutcome {
    let n = inst.n();
    let samples = sample_hitters(n, crate::local::pairwise_beta(n), seed);
    let budget = cost_budget(n, tau);
    let sources: BTreeSet<VertexId> = thick_pairs.iter().map(|&d| inst.demand(d).source).collect();
    let sinks: BTreeSet<VertexId> = thick_pairs.iter().map(|&d| inst.demand(d).sink).collect();
    let terminals = sources.len() + sinks.len();
    let cost_bound = Rat::from_integer((samples.distinct.len() * terminals).into()) * &budget * one_plus(eps);
    if thick_pairs.is_empty() {
        return ThickOutcome {
            edges: BTreeSet::new(),
            samples,
            resolved: BTreeSet::new(),
            unresolved: BTreeSet::new(),
            cost: Rat::default(),
            cost_bound,
        };
    }

    // (from, to) queries in (sample, terminal) order
    let mut queries: Vec<(VertexId, VertexId)> = Vec::new();
    for &u in &samples.distinct {
        queries.extend(sources.iter().map(|&s| (s, u)));
        queries.extend(sinks.iter().map(|&t| (u, t)));
    }
    let policy = RspPolicy::for_instance(inst);
    let paths: Vec<Vec<EdgeId>> = queries
        .par_iter()
        .map(|&(a, b)| {
            min_length_under_cost(inst, a, b, &budget, eps, &policy)
                .map(|p| p.edge_ids)
                .unwrap_or_default()
        })
        .collect();
    let edges: BTreeSet<EdgeId> = paths.into_iter().flatten().collect();

    let mask = crate::graph::mask_of(inst.m(), &edges);
    let active: Vec<DemandId> = thick_pairs.iter().copied().collect();
    let resolved: BTreeSet<DemandId> = resolved_by_mask(inst, &mask, &active).into_iter().collect();
    let unresolved = thick_pairs.difference(&resolved).copied().collect();
    ThickOutcome {
        cost: inst.cost_of(&edges),
        edges,
        samples,
        resolved,
        unresolved,
        cost_bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;
    use crate::local::classify_pairs;
    use crate::rational::{int, ratio};

    #[test]
    fn sample_counts() {
        assert_eq!(sample_count(32, 8.0), 84);
        assert_eq!(sample_hitters(32, 8.0, 5).draws.len(), 84);
        let one = sample_hitters(1, 2.0, 5);
        assert!(one.draws.is_empty() && one.distinct.is_empty());
        assert_eq!(sample_hitters(20, 3.0, 9), sample_hitters(20, 3.0, 9));
    }

    #[test]
    fn no_thick_pairs_adds_nothing() {
        let inst = parse_instance("graph 2 1\ne 0 1 1 1\ndemands 1\nd 0 1 1\n").unwrap();
        let out = resolve_thick(&inst, &BTreeSet::new(), &int(4), &ratio(1, 10), 0);
        assert!(out.edges.is_empty() && out.cost == Rat::default());
    }

    /// A 6-vertex fan where every cheap feasible route passes through `h = 1`.
    fn funnel() -> Instance {
        parse_instance(
            "graph 6 6\ne 0 1 1 1\ne 1 5 1 1\ne 0 2 50 1\ne 2 3 50 1\ne 3 5 50 1\ne 4 1 1 1\n\
             demands 1\nd 0 5 3\n",
        )
        .unwrap()
    }

    #[test]
    fn sampled_hub_resolves_pair_within_ledger() {
        let inst = funnel();
        let tau = int(10);
        let class = classify_pairs(&inst, &tau);
        // L = 10 / 6^{0.8}: cheap route 0 -> 1 -> 5 only
        assert!(class.thick.contains(&0), "{class:?}");
        let mut hits = 0;
        for seed in 0..50 {
            let out = resolve_thick(&inst, &class.thick, &tau, &ratio(1, 10), seed);
            assert!(out.cost <= out.cost_bound);
            if out.samples.distinct.contains(&1) {
                assert!(out.resolved.contains(&0));
            }
            hits += out.resolved.len();
        }
        assert!(hits >= 48);
    }
}
