//! Solutions, the feasibility verifier, and the solution report format.

use crate::graph;
use crate::instance::{DemandId, EdgeId, Instance, InstanceError};
use crate::rational::{fmt_rat, parse_rat, Rat};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

/// Which phase of a solver bought an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    /// Zero-cost edges bought upfront.
    Free,
    Thick,
    Junction,
    LpRound,
    Baseline,
    Online,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Free => "free",
            Phase::Thick => "thick",
            Phase::Junction => "junction",
            Phase::LpRound => "lp-round",
            Phase::Baseline => "baseline",
            Phase::Online => "online",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Phase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "free" => Phase::Free,
            "thick" => Phase::Thick,
            "junction" => Phase::Junction,
            "lp-round" => Phase::LpRound,
            "baseline" => Phase::Baseline,
            "online" => Phase::Online,
            other => return Err(format!("unknown phase tag `{other}`")),
        })
    }
}

/// An edge subset with its exact cost and verifier-computed distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub edge_ids: BTreeSet<EdgeId>,
    pub total_cost: Rat,
    /// Attained distance per demand; `None` when the sink is unreachable.
    pub achieved: Vec<Option<u64>>,
    pub phase_tags: BTreeMap<EdgeId, Phase>,
}

impl Solution {
    /// Builds a solution, recomputing cost and distances from `inst`.
    pub fn new(inst: &Instance, edge_ids: BTreeSet<EdgeId>, phase_tags: BTreeMap<EdgeId, Phase>) -> Self {
        let report = verify_edges(inst, &edge_ids);
        Solution {
            total_cost: report.total_cost,
            achieved: report.attained,
            edge_ids,
            phase_tags,
        }
    }

    pub fn tagged(inst: &Instance, tags: BTreeMap<EdgeId, Phase>) -> Self {
        let ids = tags.keys().copied().collect();
        Solution::new(inst, ids, tags)
    }

    pub fn all_edges(inst: &Instance) -> Self {
        let tags = (0..inst.m()).map(|e| (e, Phase::Baseline)).collect();
        Solution::tagged(inst, tags)
    }

    pub fn is_feasible(&self, inst: &Instance) -> bool {
        verify_solution(inst, self).all_resolved()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub attained: Vec<Option<u64>>,
    pub resolved: Vec<bool>,
    pub total_cost: Rat,
}

impl VerifyReport {
    pub fn all_resolved(&self) -> bool {
        self.resolved.iter().all(|&r| r)
    }

    pub fn unresolved(&self) -> Vec<DemandId> {
        (0..self.resolved.len()).filter(|&i| !self.resolved[i]).collect()
    }

    pub fn resolved_count(&self) -> usize {
        self.resolved.iter().filter(|&&r| r).count()
    }
}

/// Recomputes everything from the edge set; the producer's claims are ignored.
pub fn verify_solution(inst: &Instance, sol: &Solution) -> VerifyReport {
    verify_edges(inst, &sol.edge_ids)
}

pub fn verify_edges(inst: &Instance, edge_ids: &BTreeSet<EdgeId>) -> VerifyReport {
    let mask = graph::mask_of(inst.m(), edge_ids.iter().filter(|&&e| e < inst.m()));
    let mut by_source: BTreeMap<usize, Vec<Option<u64>>> = BTreeMap::new();
    let mut attained = Vec::with_capacity(inst.k());
    let mut resolved = Vec::with_capacity(inst.k());
    for d in inst.demands() {
        let dist = by_source
            .entry(d.source)
            .or_insert_with(|| graph::distances_from(inst, d.source, Some(&mask)))[d.sink];
        attained.push(dist);
        resolved.push(dist.is_some_and(|x| x <= d.bound));
    }
    VerifyReport {
        attained,
        resolved,
        total_cost: inst.cost_of(edge_ids.iter().filter(|&&e| e < inst.m())),
    }
}

/// Per-demand resolution for an arbitrary edge mask.
pub fn resolved_by_mask(inst: &Instance, mask: &[bool], demands: &[DemandId]) -> Vec<DemandId> {
    let mut cache: BTreeMap<usize, Vec<Option<u64>>> = BTreeMap::new();
    demands
        .iter()
        .copied()
        .filter(|&id| {
            let d = inst.demand(id);
            cache
                .entry(d.source)
                .or_insert_with(|| graph::distances_from(inst, d.source, Some(mask)))[d.sink]
                .is_some_and(|x| x <= d.bound)
        })
        .collect()
}

/// Renders the solution report.
///
/// ```text
/// solution <count>
/// s <edge id> <phase>          (ascending edge id)
/// cost <p/q>
/// demands <k>
/// a <demand id> <attained|inf> <resolved 0/1>
/// ```
pub fn write_solution(inst: &Instance, sol: &Solution) -> String {
    let report = verify_solution(inst, sol);
    let mut out = format!("solution {}\n", sol.edge_ids.len());
    for e in &sol.edge_ids {
        match sol.phase_tags.get(e) {
            Some(tag) => out.push_str(&format!("s {e} {tag}\n")),
            None => out.push_str(&format!("s {e}\n")),
        }
    }
    out.push_str(&format!("cost {}\n", fmt_rat(&report.total_cost)));
    out.push_str(&format!("demands {}\n", inst.k()));
    for (i, (a, r)) in report.attained.iter().zip(&report.resolved).enumerate() {
        let a = a.map_or_else(|| "inf".to_string(), |v| v.to_string());
        out.push_str(&format!("a {i} {a} {}\n", u8::from(*r)));
    }
    out
}

/// Reads the edge set (and tags) back; costs and distances are recomputed.
pub fn parse_solution(inst: &Instance, text: &str) -> Result<Solution, InstanceError> {
    let syntax = |line: usize, message: String| InstanceError::Syntax { line, message };
    let mut ids = BTreeSet::new();
    let mut tags = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.first().copied() {
            None => continue,
            Some("s") => {
                let e: EdgeId = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| syntax(line, "expected `s <edge id> [phase]`".into()))?;
                if e >= inst.m() {
                    return Err(syntax(line, format!("edge id {e} out of range")));
                }
                ids.insert(e);
                if let Some(tag) = toks.get(2) {
                    tags.insert(e, tag.parse::<Phase>().map_err(|m| syntax(line, m))?);
                }
            }
            Some("cost") => {
                let tok = toks.get(1).ok_or_else(|| syntax(line, "missing cost".into()))?;
                parse_rat(tok).map_err(|e| syntax(line, e.to_string()))?;
            }
            Some("solution") | Some("demands") | Some("a") => {}
            Some(other) => return Err(syntax(line, format!("unknown record `{other}`"))),
        }
    }
    Ok(Solution::new(inst, ids, tags))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;
    use crate::rational::int;

    fn chain() -> Instance {
        parse_instance("graph 3 2\ne 0 1 1 1\ne 1 2 2 1\ndemands 1\nd 0 2 2\n").unwrap()
    }

    #[test]
    fn full_and_empty_solutions() {
        let inst = chain();
        let all = Solution::all_edges(&inst);
        assert!(all.is_feasible(&inst));
        assert_eq!(all.total_cost, int(3));
        let none = Solution::new(&inst, BTreeSet::new(), BTreeMap::new());
        let report = verify_solution(&inst, &none);
        assert_eq!(report.resolved, vec![false]);
        assert_eq!(report.attained, vec![None]);
    }

    #[test]
    fn broken_chain_is_unresolved() {
        let inst = chain();
        let sol = Solution::new(&inst, [0].into_iter().collect(), BTreeMap::new());
        assert_eq!(verify_solution(&inst, &sol).unresolved(), vec![0]);
    }

    #[test]
    fn report_round_trip() {
        let inst = chain();
        let sol = Solution::all_edges(&inst);
        let text = write_solution(&inst, &sol);
        assert!(text.contains("cost 3/1"));
        let back = parse_solution(&inst, &text).unwrap();
        assert_eq!(back, sol);
    }
}
