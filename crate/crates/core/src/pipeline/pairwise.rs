use super::{prune_solution, tau_schedule, Manifest, PipelineConfig, Run};
use crate::graph;
use crate::instance::{DemandId, EdgeId, Instance};
use crate::local::classify_pairs;
use crate::lp::{thin_iteration, ThinChoice};
use crate::paths::rsp_exact;
use crate::rational::{fmt_rat, Rat};
use crate::seed;
use crate::solution::{resolved_by_mask, Phase, Solution};
use crate::thick::resolve_thick;
use num_traits::Zero;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

/// The result of running every phase at one guess `tau`.
#[derive(Debug, Clone)]
pub struct TauOutcome {
    pub tau: Rat,
    /// Present when the bought edges resolve every demand.
    pub candidate: Option<Solution>,
    pub manifest: Manifest,
}

/// Union over demands of exact restricted-shortest-path routes.
pub fn baseline_solution(inst: &Instance) -> Solution {
    let mut tags = BTreeMap::new();
    for d in inst.demands() {
        let p = rsp_exact(inst, d.source, d.sink, d.bound).expect("validated demand has a feasible path");
        for e in p.edge_ids {
            tags.insert(e, Phase::Baseline);
        }
    }
    Solution::tagged(inst, tags)
}

/// Free edges, then thick pairs by hitting-set sampling, then thin
/// iterations until every remaining demand is resolved.
///
/// Thick pairs the sampled paths miss are handed to the thin loop.
pub fn solve_pairwise_at_tau(inst: &Instance, tau: &Rat, index: u64, cfg: &PipelineConfig) -> TauOutcome {
    let mut log = Manifest::default();
    let key = |k: &str| format!("tau[{index}].{k}");
    let all: Vec<DemandId> = (0..inst.k()).collect();
    let mut tags: BTreeMap<EdgeId, Phase> = inst
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.cost.is_zero())
        .map(|(id, _)| (id, Phase::Free))
        .collect();
    let resolved_now = |tags: &BTreeMap<EdgeId, Phase>| -> BTreeSet<DemandId> {
        let mask = graph::mask_of(inst.m(), tags.keys());
        resolved_by_mask(inst, &mask, &all).into_iter().collect()
    };

    let class = classify_pairs(inst, tau);
    let done = resolved_now(&tags);
    let thick: BTreeSet<DemandId> = class.thick.difference(&done).copied().collect();
    log.push(key("tau"), fmt_rat(tau));
    log.push(key("cost_budget"), fmt_rat(&class.cost_budget));
    log.push(key("thick_pairs"), format!("{:?}", class.thick));
    log.push(key("thin_pairs"), format!("{:?}", class.thin));

    let thick_out = resolve_thick(inst, &thick, tau, &cfg.eps, seed::derive(cfg.seed, seed::THICK, index));
    for &e in &thick_out.edges {
        tags.entry(e).or_insert(Phase::Thick);
    }
    log.push(key("thick.samples"), thick_out.samples.distinct.len());
    log.push(key("thick.cost"), fmt_rat(&thick_out.cost));
    log.push(key("thick.cost_bound"), fmt_rat(&thick_out.cost_bound));
    log.push(key("thick.unresolved"), format!("{:?}", thick_out.unresolved));

    let done = resolved_now(&tags);
    let mut remaining: Vec<DemandId> = all.iter().copied().filter(|d| !done.contains(d)).collect();
    let mut thin_cost = Rat::zero();
    let mut iteration = 0u64;
    let mut failed = false;
    while !remaining.is_empty() {
        let bought: BTreeSet<EdgeId> = tags.keys().copied().collect();
        let step_seed = seed::derive(seed::derive(cfg.seed, seed::TAU, index), seed::ROUND_THIN, iteration);
        let step = match thin_iteration(
            inst,
            &remaining,
            &bought,
            &class.cost_budget,
            &cfg.eps,
            step_seed,
            &cfg.thin_options(),
        ) {
            Ok(s) => s,
            Err(e) => {
                log.push(key("thin.error"), e);
                failed = true;
                break;
            }
        };
        let phase = match step.choice {
            ThinChoice::JunctionTree => Phase::Junction,
            ThinChoice::Rounded => Phase::LpRound,
        };
        for &e in &step.edges {
            tags.entry(e).or_insert(phase);
        }
        thin_cost += inst.cost_of(&step.edges);
        let fmt_opt = |d: &Option<Rat>| d.as_ref().map_or("none".to_string(), fmt_rat);
        log.push(
            key(&format!("thin[{iteration}]")),
            format!(
                "choice={} density={} k1={} k2={} retries={} resolved={:?} y_hat={}",
                phase,
                fmt_rat(&step.density),
                fmt_opt(&step.k1_density),
                fmt_opt(&step.k2_density),
                step.retries,
                step.resolved,
                step.y_hat
                    .iter()
                    .map(|(d, y)| format!("{d}:{}", fmt_rat(y)))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        );
        remaining.retain(|d| !step.resolved.contains(d));
        iteration += 1;
    }
    log.push(key("thin.cost"), fmt_rat(&thin_cost));

    let sol = Solution::tagged(inst, tags);
    let feasible = !failed && sol.is_feasible(inst);
    log.push(
        key("candidate"),
        if feasible { fmt_rat(&sol.total_cost) } else { "none".to_string() },
    );
    TauOutcome {
        tau: tau.clone(),
        candidate: feasible.then_some(sol),
        manifest: log,
    }
}

/// Runs every guess in the doubling schedule (in parallel), folds in the
/// per-demand baseline, keeps the cheapest verified candidate and prunes it.
pub fn solve_pairwise(inst: &Instance, cfg: &PipelineConfig) -> Run {
    let mut manifest = Manifest::default();
    manifest.push("mode", "pairwise");
    manifest.push("seed", cfg.seed);
    manifest.push("eps", fmt_rat(&cfg.eps));
    let schedule = tau_schedule(inst);
    manifest.push(
        "tau_schedule",
        schedule.values.iter().map(fmt_rat).collect::<Vec<_>>().join(","),
    );

    let baseline = baseline_solution(inst);
    manifest.push("baseline.cost", fmt_rat(&baseline.total_cost));
    let mut best = baseline;
    let mut best_source = "baseline".to_string();
    if schedule.values.is_empty() {
        let tags = inst
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.cost.is_zero())
            .map(|(id, _)| (id, Phase::Free))
            .collect();
        let free = Solution::tagged(inst, tags);
        if free.is_feasible(inst) {
            best = free;
            best_source = "free".to_string();
        }
    }

    let outcomes: Vec<TauOutcome> = schedule
        .values
        .par_iter()
        .enumerate()
        .map(|(i, tau)| solve_pairwise_at_tau(inst, tau, i as u64, cfg))
        .collect();
    for (i, out) in outcomes.into_iter().enumerate() {
        manifest.extend(out.manifest);
        if let Some(c) = out.candidate {
            if c.total_cost < best.total_cost {
                best = c;
                best_source = format!("tau[{i}]");
            }
        }
    }
    let pruned = prune_solution(inst, &best);
    manifest.push("chosen", best_source);
    manifest.push("cost.before_prune", fmt_rat(&best.total_cost));
    manifest.push("cost", fmt_rat(&pruned.total_cost));
    Run {
        solution: pruned,
        manifest,
    }
}
