use super::{prune_solution, Manifest, PipelineConfig, PipelineError, Run};
use crate::instance::{DemandId, Instance};
use crate::junction::greedy_jt_cover_traced;
use crate::rational::fmt_rat;
use crate::solution::Solution;

/// Junction-tree cover with the root fixed at the common source; every
/// demand then routes through it.
pub fn solve_single_source(inst: &Instance, cfg: &PipelineConfig) -> Result<Run, PipelineError> {
    let mut manifest = Manifest::default();
    manifest.push("mode", "single-source");
    manifest.push("seed", cfg.seed);
    manifest.push("eps", fmt_rat(&cfg.eps));
    let Some(first) = inst.demands().first() else {
        manifest.push("cost", "0");
        return Ok(Run {
            solution: Solution::new(inst, Default::default(), Default::default()),
            manifest,
        });
    };
    let source = first.source;
    if let Some(d) = inst.demands().iter().find(|d| d.source != source) {
        return Err(PipelineError::MixedSources(source, d.source));
    }
    let all: Vec<DemandId> = (0..inst.k()).collect();
    let cover = greedy_jt_cover_traced(inst, &all, cfg.backend, Some(&[source]))?;
    for (i, t) in cover.trees.iter().enumerate() {
        manifest.push(
            format!("tree[{i}]"),
            format!("density={} satisfied={:?}", fmt_rat(&t.density), t.satisfied),
        );
    }
    let pruned = prune_solution(inst, &cover.solution);
    manifest.push("cost.before_prune", fmt_rat(&cover.solution.total_cost));
    manifest.push("cost", fmt_rat(&pruned.total_cost));
    if !pruned.is_feasible(inst) {
        return Err(PipelineError::Invariant("single-source cover left a demand unresolved".into()));
    }
    Ok(Run {
        solution: pruned,
        manifest,
    })
}
