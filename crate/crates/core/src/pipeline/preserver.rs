use super::{prune_solution, solve_single_source, Manifest, PipelineConfig, PipelineError, Run};
use crate::graph;
use crate::instance::{Demand, DemandId, EdgeId, Instance, VertexId};
use crate::local::{local_graph, thick_threshold};
use crate::lp::{round_preserver, solve_preserver_lp};
use crate::rational::fmt_rat;
use crate::seed;
use crate::solution::{resolved_by_mask, Phase, Solution};
use crate::thick::sample_count;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

pub const PRESERVER_ROUNDING_RETRIES: usize = 20;

/// The graph with one demand per ordered reachable pair, bounded by the
/// exact distance.
pub fn preserver_instance(graph_only: &Instance) -> Instance {
    let apsp = graph::all_pairs(graph_only, None);
    let mut demands = Vec::new();
    for (s, row) in apsp.iter().enumerate() {
        for (t, d) in row.iter().enumerate() {
            if let (true, Some(d)) = (s != t, d) {
                demands.push(Demand { source: s, sink: t, bound: *d });
            }
        }
    }
    graph_only.with_demands(demands).expect("exact distances are valid bounds")
}

/// Single-source preserver from `v` plus the single-sink preserver into `v`
/// (solved on the reversed graph; edge ids are shared).
fn hub_edges(inst: &Instance, v: VertexId, cfg: &PipelineConfig) -> Result<BTreeSet<EdgeId>, PipelineError> {
    let from: Vec<Demand> = inst.demands().iter().filter(|d| d.source == v).copied().collect();
    let into: Vec<Demand> = inst
        .demands()
        .iter()
        .filter(|d| d.sink == v)
        .map(|d| Demand { source: v, sink: d.source, bound: d.bound })
        .collect();
    let mut edges = BTreeSet::new();
    if !from.is_empty() {
        let out = inst.with_demands(from).expect("subset of valid demands");
        edges.extend(solve_single_source(&out, cfg)?.solution.edge_ids);
    }
    if !into.is_empty() {
        let rev = inst.reversed().with_demands(into).expect("reversed distances match");
        edges.extend(solve_single_source(&rev, cfg)?.solution.edge_ids);
    }
    Ok(edges)
}

/// All-pair distance preserver: sampled hubs buy single-source and
/// single-sink preservers; the covering LP over anti-spanners is rounded for
/// what remains, with shortest paths as the last resort.
pub fn solve_allpair_preserver(graph_only: &Instance, cfg: &PipelineConfig) -> Result<Run, PipelineError> {
    let inst = preserver_instance(graph_only);
    let n = inst.n();
    let mut manifest = Manifest::default();
    manifest.push("mode", "allpair-preserver");
    manifest.push("seed", cfg.seed);
    manifest.push("eps", fmt_rat(&cfg.eps));
    manifest.push("pairs", inst.k());
    let all: Vec<DemandId> = (0..inst.k()).collect();
    let beta = (n as f64).sqrt();
    let threshold = thick_threshold(n, beta);
    let thick: BTreeSet<DemandId> = all
        .iter()
        .copied()
        .filter(|&d| local_graph(&inst, d, None).vertices.len() >= threshold)
        .collect();
    manifest.push("threshold", threshold);
    manifest.push("thick_pairs", thick.len());

    let mut tags: BTreeMap<EdgeId, Phase> = BTreeMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed::derive(cfg.seed, seed::PRESERVER_ROOTS, 0));
    let hubs: BTreeSet<VertexId> = (0..sample_count(n, beta)).map(|_| rng.gen_range(0..n.max(1))).collect();
    manifest.push("hubs", format!("{hubs:?}"));
    if !thick.is_empty() {
        for &v in &hubs {
            for e in hub_edges(&inst, v, cfg)? {
                tags.entry(e).or_insert(Phase::Thick);
            }
        }
    }
    let unresolved = |tags: &BTreeMap<EdgeId, Phase>| -> Vec<DemandId> {
        let mask = graph::mask_of(inst.m(), tags.keys());
        let ok: BTreeSet<DemandId> = resolved_by_mask(&inst, &mask, &all).into_iter().collect();
        all.iter().copied().filter(|d| !ok.contains(d)).collect()
    };
    manifest.push("thick.cost", fmt_rat(&inst.cost_of(tags.keys())));

    let remaining = unresolved(&tags);
    manifest.push("thin_pairs", remaining.len());
    if !remaining.is_empty() {
        let lp = solve_preserver_lp(&inst, &remaining);
        manifest.push("lp.value", fmt_rat(&lp.value));
        manifest.push("lp.cuts", lp.cuts.len());
        let mut settled = false;
        for attempt in 0..PRESERVER_ROUNDING_RETRIES {
            let picked = round_preserver(&lp.x, n, seed::derive(cfg.seed, seed::ROUND_PRESERVER, attempt as u64));
            let mut trial = tags.clone();
            for e in picked {
                trial.entry(e).or_insert(Phase::LpRound);
            }
            if unresolved(&trial).is_empty() {
                manifest.push("rounding.attempts", attempt + 1);
                tags = trial;
                settled = true;
                break;
            }
        }
        if !settled {
            manifest.push("rounding.attempts", format!("{PRESERVER_ROUNDING_RETRIES} (fallback)"));
            for d in unresolved(&tags) {
                let dem = inst.demand(d);
                let path = graph::shortest_path(&inst, dem.source, dem.sink, None).expect("reachable pair");
                for e in path {
                    tags.entry(e).or_insert(Phase::Baseline);
                }
            }
        }
    }
    let sol = Solution::tagged(&inst, tags);
    let pruned = prune_solution(&inst, &sol);
    manifest.push("cost.before_prune", fmt_rat(&sol.total_cost));
    manifest.push("cost", fmt_rat(&pruned.total_cost));
    if !pruned.is_feasible(&inst) {
        return Err(PipelineError::Invariant("preserver left a pair unresolved".into()));
    }
    Ok(Run {
        solution: pruned,
        manifest,
    })
}
