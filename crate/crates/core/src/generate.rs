//! Seeded random instances and the benchmark suites built from them.

use crate::graph;
use crate::instance::{Demand, Edge, Instance};
use crate::rational::int;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub n: usize,
    pub edge_probability: f64,
    /// Integer costs drawn uniformly from this inclusive range.
    pub cost_range: (u64, u64),
    pub max_length: u64,
    pub demands: usize,
    /// Bounds are `ceil(slack * shortest distance)`; must be at least 1.
    pub slack: f64,
    /// Optional cap on the arc count; surplus arcs are dropped at random.
    pub max_edges: Option<usize>,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n: 8,
            edge_probability: 0.3,
            cost_range: (1, 10),
            max_length: 5,
            demands: 3,
            slack: 1.5,
            max_edges: None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("requested {requested} demands but only {available} ordered pairs are reachable")]
    RequestedDemandsUnreachable { requested: usize, available: usize },
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

pub fn gen_random_instance(params: &GenParams, seed: u64) -> Result<Instance, GenError> {
    let bad = |m: &str| Err(GenError::InvalidParams(m.to_string()));
    if params.n == 0 {
        return bad("n must be positive");
    }
    if !(0.0..=1.0).contains(&params.edge_probability) {
        return bad("edge probability must lie in [0, 1]");
    }
    if params.cost_range.0 > params.cost_range.1 {
        return bad("empty cost range");
    }
    if params.max_length == 0 {
        return bad("max length must be positive");
    }
    if params.slack.is_nan() || params.slack < 1.0 {
        return bad("slack must be at least 1");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.n;
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(params.edge_probability) {
                arcs.push((u, v));
            }
        }
    }
    if let Some(cap) = params.max_edges {
        if arcs.len() > cap {
            arcs.shuffle(&mut rng);
            arcs.truncate(cap);
            arcs.sort_unstable();
        }
    }
    let edges: Vec<Edge> = arcs
        .into_iter()
        .map(|(tail, head)| Edge {
            tail,
            head,
            cost: int(rng.gen_range(params.cost_range.0..=params.cost_range.1) as i64),
            length: rng.gen_range(1..=params.max_length),
        })
        .collect();
    let graph = Instance::graph(n, edges).expect("generated graph is simple");

    let apsp = graph::all_pairs(&graph, None);
    let mut reachable: Vec<(usize, usize, u64)> = Vec::new();
    for (s, row) in apsp.iter().enumerate() {
        for (t, d) in row.iter().enumerate() {
            if let (true, Some(d)) = (s != t, d) {
                reachable.push((s, t, *d));
            }
        }
    }
    if reachable.len() < params.demands {
        return Err(GenError::RequestedDemandsUnreachable {
            requested: params.demands,
            available: reachable.len(),
        });
    }
    let picked: Vec<_> = reachable
        .choose_multiple(&mut rng, params.demands)
        .copied()
        .collect();
    let demands = picked
        .into_iter()
        .map(|(source, sink, d)| Demand {
            source,
            sink,
            bound: (params.slack * d as f64).ceil() as u64,
        })
        .collect();
    Ok(graph.with_demands(demands).expect("bounds dominate distances"))
}

/// The desk-scale suite: `n in [4, 10]`, at most 20 arcs, at most 5 demands,
/// lengths up to 5, slack cycling through 1, 1.5 and 2.
///
/// Instance `i` is drawn from seed `base_seed + i` (re-drawn with a bumped
/// seed when too few pairs are reachable), so the suite is reproducible.
pub fn tiny_suite(count: usize, base_seed: u64) -> Vec<Instance> {
    suite_with(count, base_seed, 4..=10, 20)
}

/// Instances inside the default oracle budget (`n <= 8`, `m <= 14`).
pub fn oracle_suite(count: usize, base_seed: u64) -> Vec<Instance> {
    suite_with(count, base_seed, 4..=8, 14)
}

fn suite_with(
    count: usize,
    base_seed: u64,
    sizes: std::ops::RangeInclusive<usize>,
    max_edges: usize,
) -> Vec<Instance> {
    const SLACKS: [f64; 3] = [1.0, 1.5, 2.0];
    let mut out = Vec::with_capacity(count);
    let mut seed = base_seed;
    let mut i = 0usize;
    while out.len() < count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5417e);
        let n = rng.gen_range(sizes.clone());
        let target = (max_edges as f64 * 0.8).min((n * (n - 1)) as f64);
        let params = GenParams {
            n,
            edge_probability: (target / (n * (n - 1)) as f64).min(1.0),
            cost_range: (1, 10),
            max_length: 5,
            demands: rng.gen_range(1..=5),
            slack: SLACKS[i % SLACKS.len()],
            max_edges: Some(max_edges),
        };
        seed = seed.wrapping_add(1);
        if let Ok(inst) = gen_random_instance(&params, seed) {
            out.push(inst);
            i += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let p = GenParams::default();
        let a = gen_random_instance(&p, 7).unwrap().to_text();
        let b = gen_random_instance(&p, 7).unwrap().to_text();
        assert_eq!(a, b);
    }

    #[test]
    fn unit_slack_gives_exact_distances() {
        let p = GenParams {
            slack: 1.0,
            ..GenParams::default()
        };
        let inst = gen_random_instance(&p, 3).unwrap();
        for d in inst.demands() {
            assert_eq!(graph::distance(&inst, d.source, d.sink, None), Some(d.bound));
        }
    }

    #[test]
    fn complete_digraph() {
        let p = GenParams {
            n: 6,
            edge_probability: 1.0,
            demands: 2,
            ..GenParams::default()
        };
        assert_eq!(gen_random_instance(&p, 1).unwrap().m(), 30);
    }

    #[test]
    fn too_many_demands() {
        let p = GenParams {
            n: 3,
            edge_probability: 0.0,
            demands: 1,
            ..GenParams::default()
        };
        assert!(matches!(
            gen_random_instance(&p, 1),
            Err(GenError::RequestedDemandsUnreachable { available: 0, .. })
        ));
    }

    #[test]
    fn suites_respect_their_limits() {
        for inst in tiny_suite(30, 11) {
            assert!((4..=10).contains(&inst.n()) && inst.m() <= 20);
            assert!((1..=5).contains(&inst.k()));
        }
        for inst in oracle_suite(20, 11) {
            assert!(inst.n() <= 8 && inst.m() <= 14);
        }
    }
}
