//! Brute-force ground truth for small instances: optimal spanners by subset
//! enumeration, cheap feasible paths by DFS, and the full path LP.

use crate::graph;
use crate::instance::{DemandId, EdgeId, Instance, VertexId};
use crate::junction::{min_density_jt_exact, JtError, JtQuery, JunctionTree};
use crate::lp::simplex::{solve, LinearProgram, LpOutcome, Sense};
use crate::rational::{ceil_div_usize, Rat};
use crate::solution::{Phase, Solution};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleBudget {
    /// Edge cap for subset enumeration.
    pub max_edges: usize,
    pub max_vertices: usize,
    /// Edge cap for exact junction-tree search.
    pub jt_max_edges: usize,
    pub time_limit: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_edges: 14,
            max_vertices: 8,
            jt_max_edges: 16,
            time_limit: Duration::from_secs(60),
        }
    }
}

impl OracleBudget {
    pub fn admits(&self, inst: &Instance) -> bool {
        inst.m() <= self.max_edges && inst.n() <= self.max_vertices
    }

    fn check(&self, inst: &Instance) -> Result<(), OracleError> {
        if inst.m() > self.max_edges {
            return Err(OracleError::BudgetExceeded(format!(
                "{} edges exceed the limit of {}",
                inst.m(),
                self.max_edges
            )));
        }
        if inst.n() > self.max_vertices {
            return Err(OracleError::BudgetExceeded(format!(
                "{} vertices exceed the limit of {}",
                inst.n(),
                self.max_vertices
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("fewer than half of the demands admit a cheap feasible path")]
    Infeasible,
    #[error("no demand can be routed through any root")]
    NoneSatisfiable,
}

struct Clock {
    start: Instant,
    limit: Duration,
}

impl Clock {
    fn new(budget: &OracleBudget) -> Self {
        Clock {
            start: Instant::now(),
            limit: budget.time_limit,
        }
    }

    fn tick(&self) -> Result<(), OracleError> {
        if self.start.elapsed() > self.limit {
            Err(OracleError::BudgetExceeded(format!("time limit of {:?} reached", self.limit)))
        } else {
            Ok(())
        }
    }
}

/// Minimum-cost feasible edge set: subsets are tried in nondecreasing cost
/// order (ties by lexicographic edge list) and the first feasible one wins.
pub fn exact_opt(inst: &Instance, budget: &OracleBudget) -> Result<Solution, OracleError> {
    budget.check(inst)?;
    let clock = Clock::new(budget);
    let m = inst.m();
    let costs = inst.costs();
    let mut subsets: Vec<(Rat, Vec<EdgeId>)> = (0u32..(1u32 << m))
        .map(|bits| {
            let ids: Vec<EdgeId> = (0..m).filter(|e| bits >> e & 1 == 1).collect();
            let c = ids.iter().map(|&e| costs[e].clone()).sum();
            (c, ids)
        })
        .collect();
    subsets.sort();
    let all: Vec<DemandId> = (0..inst.k()).collect();
    for (i, (_, ids)) in subsets.iter().enumerate() {
        if i % 1024 == 0 {
            clock.tick()?;
        }
        let mask = graph::mask_of(m, ids);
        if crate::solution::resolved_by_mask(inst, &mask, &all).len() == all.len() {
            let tags: BTreeMap<EdgeId, Phase> = ids.iter().map(|&e| (e, Phase::Baseline)).collect();
            return Ok(Solution::new(inst, ids.iter().copied().collect(), tags));
        }
    }
    unreachable!("the full edge set is feasible for a validated instance")
}

/// Every simple `s ~> t` path with length within the demand's bound and, when
/// given, cost at most `cost_budget`.
pub fn enumerate_feasible_paths(
    inst: &Instance,
    demand: DemandId,
    cost_budget: Option<&Rat>,
    budget: &OracleBudget,
) -> Result<Vec<Vec<EdgeId>>, OracleError> {
    budget.check(inst)?;
    let d = *inst.demand(demand);
    let clock = Clock::new(budget);
    let mut out = Vec::new();
    let mut on_path = vec![false; inst.n()];
    let mut stack = Vec::new();
    on_path[d.source] = true;
    dfs(inst, d.source, d.sink, d.bound, cost_budget, 0, &Rat::zero(), &mut on_path, &mut stack, &mut out, &clock)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    inst: &Instance,
    at: VertexId,
    sink: VertexId,
    bound: u64,
    cost_budget: Option<&Rat>,
    length: u64,
    cost: &Rat,
    on_path: &mut [bool],
    stack: &mut Vec<EdgeId>,
    out: &mut Vec<Vec<EdgeId>>,
    clock: &Clock,
) -> Result<(), OracleError> {
    if at == sink {
        out.push(stack.clone());
        if out.len().is_multiple_of(4096) {
            clock.tick()?;
        }
        return Ok(());
    }
    for &e in inst.out_edges(at) {
        let edge = inst.edge(e);
        let l = length + edge.length;
        let c = cost + &edge.cost;
        if on_path[edge.head] || l > bound || cost_budget.is_some_and(|b| c > *b) {
            continue;
        }
        on_path[edge.head] = true;
        stack.push(e);
        dfs(inst, edge.head, sink, bound, cost_budget, l, &c, on_path, stack, out, clock)?;
        stack.pop();
        on_path[edge.head] = false;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lp3Solution {
    pub value: Rat,
    pub x: Vec<Rat>,
    pub y: BTreeMap<DemandId, Rat>,
    /// `(demand, path, flow)` for every enumerated cheap feasible path.
    pub flows: Vec<(DemandId, Vec<EdgeId>, Rat)>,
}

/// The thin-pair path LP over all enumerated feasible paths of cost at most
/// `cost_budget`: `min c.x` with `sum y >= ceil(|D|/2)`, per-(demand, edge)
/// capacities `sum f <= x_e`, `sum f = y_d`, and all variables in `[0, 1]`.
pub fn exact_lp3(
    inst: &Instance,
    demands: &[DemandId],
    cost_budget: &Rat,
    budget: &OracleBudget,
) -> Result<Lp3Solution, OracleError> {
    let mut paths: Vec<(DemandId, Vec<EdgeId>)> = Vec::new();
    for &d in demands {
        for p in enumerate_feasible_paths(inst, d, Some(cost_budget), budget)? {
            paths.push((d, p));
        }
    }
    let required = ceil_div_usize(demands.len(), 2);
    let with_paths: BTreeSet<DemandId> = paths.iter().map(|p| p.0).collect();
    if with_paths.len() < required || demands.is_empty() {
        return Err(OracleError::Infeasible);
    }
    let m = inst.m();
    let mut lp = LinearProgram::new(m);
    lp.objective = inst.costs();
    let y_var: BTreeMap<DemandId, usize> = with_paths.iter().map(|&d| (d, lp.add_var(Rat::zero()))).collect();
    let f_var: Vec<usize> = paths.iter().map(|_| lp.add_var(Rat::zero())).collect();
    lp.add_row(
        y_var.values().map(|&v| (v, Rat::one())).collect(),
        Sense::Ge,
        Rat::from_integer(required.into()),
    );
    for (&d, &yv) in &y_var {
        let mut coeffs: Vec<(usize, Rat)> = paths
            .iter()
            .enumerate()
            .filter(|(_, p)| p.0 == d)
            .map(|(j, _)| (f_var[j], Rat::one()))
            .collect();
        coeffs.push((yv, -Rat::one()));
        lp.add_row(coeffs, Sense::Eq, Rat::zero());
        lp.add_row(vec![(yv, Rat::one())], Sense::Le, Rat::one());
        for e in 0..m {
            let mut coeffs: Vec<(usize, Rat)> = paths
                .iter()
                .enumerate()
                .filter(|(_, p)| p.0 == d && p.1.contains(&e))
                .map(|(j, _)| (f_var[j], Rat::one()))
                .collect();
            if coeffs.is_empty() {
                continue;
            }
            coeffs.push((e, -Rat::one()));
            lp.add_row(coeffs, Sense::Le, Rat::zero());
        }
    }
    for e in 0..m {
        lp.add_row(vec![(e, Rat::one())], Sense::Le, Rat::one());
    }
    let sol = match solve(&lp) {
        LpOutcome::Optimal(s) => s,
        other => unreachable!("path LP with a cheap path per required demand is solvable, got {other:?}"),
    };
    Ok(Lp3Solution {
        value: sol.value,
        x: sol.x[..m].to_vec(),
        y: y_var.iter().map(|(&d, &v)| (d, sol.x[v].clone())).collect(),
        flows: paths
            .into_iter()
            .zip(&f_var)
            .map(|((d, p), &v)| (d, p, sol.x[v].clone()))
            .collect(),
    })
}

/// Global minimum-density junction tree over all roots and edge subsets.
pub fn exact_min_density_jt(
    inst: &Instance,
    demands: &[DemandId],
    budget: &OracleBudget,
) -> Result<JunctionTree, OracleError> {
    min_density_jt_exact(inst, demands, &JtQuery::default(), budget.jt_max_edges).map_err(|e| match e {
        JtError::ExactCapExceeded { m, cap } => {
            OracleError::BudgetExceeded(format!("{m} edges exceed the junction-tree limit of {cap}"))
        }
        JtError::NoneSatisfiable => OracleError::NoneSatisfiable,
    })
}
