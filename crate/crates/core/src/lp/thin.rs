//! The thin-pair path LP, solved by column generation with resource-constrained
//! pricing, and one thin iteration choosing between a junction tree and a
//! rounded LP solution.

use super::round::round_thin;
use super::simplex::{solve, LinearProgram, LpOutcome, Sense};
use crate::graph;
use crate::instance::{DemandId, EdgeId, Instance};
use crate::junction::{min_density_jt, Backend, JtQuery};
use crate::paths::{rcsp_exact_with, rcsp_with, rsp_exact};
use crate::rational::{ceil_div_usize, one_plus, Rat};
use crate::seed;
use crate::solution::resolved_by_mask;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub demand: DemandId,
    pub edge_ids: Vec<EdgeId>,
    pub flow: Rat,
}

/// Duals of the restricted master at its optimum.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DualState {
    /// Reduced cost of each `x_e`: `c(e) - (1 + eps) sum_d z[d][e]`.
    pub edge_duals: Vec<Rat>,
    /// Dual of `y_d <= 1`.
    pub pair_duals: BTreeMap<DemandId, Rat>,
    /// Dual of the per-(demand, edge) capacity rows; absent rows are 0.
    pub path_prices: BTreeMap<DemandId, Vec<Rat>>,
    /// Dual of the flow-conservation row `sum f_p = y_d`, clamped at 0 (the
    /// clamp keeps dual feasibility since path prices are non-negative).
    pub w: BTreeMap<DemandId, Rat>,
    /// Dual of the covering row.
    pub cover: Rat,
}

impl DualState {
    pub fn is_nonnegative(&self) -> bool {
        self.edge_duals.iter().all(|v| !v.is_negative())
            && self.pair_duals.values().all(|v| !v.is_negative())
            && self.path_prices.values().flatten().all(|v| !v.is_negative())
            && self.w.values().all(|v| !v.is_negative())
            && !self.cover.is_negative()
    }

    /// `cover * required - sum pair_duals`.
    pub fn objective(&self, required: usize) -> Rat {
        &self.cover * Rat::from_integer(required.into()) - self.pair_duals.values().sum::<Rat>()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FractionalSolution {
    /// `x_e = max_d sum of d's flow through e`: feasible for the unrelaxed LP.
    pub x: Vec<Rat>,
    pub y: BTreeMap<DemandId, Rat>,
    pub columns: Vec<Column>,
    /// `sum c(e) x_e = (1 + eps) * master_value`.
    pub objective: Rat,
    /// Optimum of the master with relaxed capacities `sum f <= (1 + eps) x`.
    pub master_value: Rat,
    pub budget: Rat,
    pub eps: Rat,
    /// `ceil(|D| / 2)`.
    pub required: usize,
    pub duals: DualState,
    pub iterations: usize,
    /// `(dual objective, primal objective)` of the master per iteration.
    pub duality_log: Vec<(Rat, Rat)>,
}

impl FractionalSolution {
    pub fn flow_into(&self, demand: DemandId) -> Rat {
        self.columns.iter().filter(|c| c.demand == demand).map(|c| c.flow.clone()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThinLpError {
    #[error("only {admissible} of the {required} required demands admit a cheap feasible path")]
    Infeasible { admissible: usize, required: usize },
    #[error("no thin demands given")]
    Empty,
}

/// Column generation on the path LP with relaxed capacities.
///
/// Columns are feasible paths of cost at most `budget`. Pricing asks the
/// resource-constrained oracle for the path minimizing the capacity duals
/// `z[d]` under the exact length bound and the `(1 + eps)`-relaxed cost
/// budget, falling back to an exact-budget search when that path costs more
/// than `budget`, and adds it while `sum z < w_d`. At termination no path of
/// cost at most `budget` prices out, so `objective` equals the path LP
/// optimum over those paths.
pub fn solve_thin_lp(
    inst: &Instance,
    demands: &[DemandId],
    budget: &Rat,
    eps: &Rat,
) -> Result<FractionalSolution, ThinLpError> {
    solve_thin_lp_priced(inst, demands, budget, eps, &inst.costs())
}

/// [`solve_thin_lp`] with an objective cost vector (bought edges at 0) that
/// may differ from the costs defining cheap paths.
pub fn solve_thin_lp_priced(
    inst: &Instance,
    demands: &[DemandId],
    budget: &Rat,
    eps: &Rat,
    objective: &[Rat],
) -> Result<FractionalSolution, ThinLpError> {
    if demands.is_empty() {
        return Err(ThinLpError::Empty);
    }
    let required = ceil_div_usize(demands.len(), 2);
    let mut columns: Vec<(DemandId, Vec<EdgeId>)> = Vec::new();
    for &d in demands {
        let dem = inst.demand(d);
        if let Ok(p) = rsp_exact(inst, dem.source, dem.sink, dem.bound) {
            if p.total_cost <= *budget {
                columns.push((d, p.edge_ids));
            }
        }
    }
    let admissible: Vec<DemandId> = columns.iter().map(|c| c.0).collect();
    if admissible.len() < required {
        return Err(ThinLpError::Infeasible {
            admissible: admissible.len(),
            required,
        });
    }
    let scale = one_plus(eps);
    let costs = inst.costs();
    let zeros = vec![Rat::zero(); inst.m()];
    let mut duality_log = Vec::new();
    let mut iterations = 0;
    loop {
        iterations += 1;
        let master = Master::build(inst.m(), &admissible, &columns, objective, &scale, required);
        let sol = match solve(&master.lp) {
            LpOutcome::Optimal(s) => s,
            other => unreachable!("restricted master is feasible and bounded, got {other:?}"),
        };
        let duals = master.duals(&sol.duals, objective, &scale);
        duality_log.push((duals.objective(required), sol.value.clone()));

        let mut added = false;
        for &d in &admissible {
            let dem = inst.demand(d);
            let z = duals.path_prices.get(&d).unwrap_or(&zeros);
            let w = &duals.w[&d];
            let Ok(mut p) = rcsp_with(inst, z, &costs, dem.source, dem.sink, dem.bound, budget, eps) else {
                continue;
            };
            // The relaxed search may overshoot the budget; only then pay for
            // the exact one, which keeps every column within `budget`.
            if p.edge_ids.iter().map(|&e| &costs[e]).sum::<Rat>() > *budget {
                match rcsp_exact_with(inst, z, &costs, dem.source, dem.sink, dem.bound, budget) {
                    Ok(q) => p = q,
                    Err(_) => continue,
                }
            }
            let price: Rat = p.edge_ids.iter().map(|&e| z[e].clone()).sum();
            if price < *w && !columns.iter().any(|(cd, ce)| *cd == d && *ce == p.edge_ids) {
                columns.push((d, p.edge_ids));
                added = true;
            }
        }
        if added {
            continue;
        }

        let flows: Vec<Rat> = (0..columns.len()).map(|i| sol.x[master.f_var[i]].clone()).collect();
        let mut x = vec![Rat::zero(); inst.m()];
        for &d in &admissible {
            let mut through = vec![Rat::zero(); inst.m()];
            for (i, (cd, edges)) in columns.iter().enumerate() {
                if *cd == d {
                    for &e in edges {
                        through[e] += &flows[i];
                    }
                }
            }
            for e in 0..inst.m() {
                if through[e] > x[e] {
                    x[e] = through[e].clone();
                }
            }
        }
        let y = admissible
            .iter()
            .enumerate()
            .map(|(i, &d)| (d, sol.x[master.y_var[i]].clone()))
            .collect();
        let objective_value = objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        return Ok(FractionalSolution {
            x,
            y,
            columns: columns
                .into_iter()
                .zip(flows)
                .map(|((demand, edge_ids), flow)| Column { demand, edge_ids, flow })
                .collect(),
            objective: objective_value,
            master_value: sol.value,
            budget: budget.clone(),
            eps: eps.clone(),
            required,
            duals,
            iterations,
            duality_log,
        });
    }
}

struct Master {
    lp: LinearProgram,
    y_var: Vec<usize>,
    f_var: Vec<usize>,
    admissible: Vec<DemandId>,
    cover_row: usize,
    flow_row: Vec<usize>,
    bound_row: Vec<usize>,
    /// (demand position, edge) -> capacity row
    cap_row: BTreeMap<(usize, EdgeId), usize>,
}

impl Master {
    fn build(
        m: usize,
        admissible: &[DemandId],
        columns: &[(DemandId, Vec<EdgeId>)],
        objective: &[Rat],
        scale: &Rat,
        required: usize,
    ) -> Self {
        let mut lp = LinearProgram::new(m);
        lp.objective = objective.to_vec();
        let pos: BTreeMap<DemandId, usize> = admissible.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        let y_var: Vec<usize> = admissible.iter().map(|_| lp.add_var(Rat::zero())).collect();
        let f_var: Vec<usize> = columns.iter().map(|_| lp.add_var(Rat::zero())).collect();
        let cover_row = lp.add_row(y_var.iter().map(|&v| (v, Rat::one())).collect(), Sense::Ge, Rat::from_integer(required.into()));
        let mut flow_row = Vec::new();
        let mut bound_row = Vec::new();
        for (i, &d) in admissible.iter().enumerate() {
            let mut coeffs: Vec<(usize, Rat)> = columns
                .iter()
                .enumerate()
                .filter(|(_, c)| c.0 == d)
                .map(|(j, _)| (f_var[j], Rat::one()))
                .collect();
            coeffs.push((y_var[i], -Rat::one()));
            flow_row.push(lp.add_row(coeffs, Sense::Eq, Rat::zero()));
            bound_row.push(lp.add_row(vec![(y_var[i], Rat::one())], Sense::Le, Rat::one()));
        }
        let mut uses: BTreeMap<(usize, EdgeId), Vec<usize>> = BTreeMap::new();
        for (j, (d, edges)) in columns.iter().enumerate() {
            for &e in edges {
                uses.entry((pos[d], e)).or_default().push(j);
            }
        }
        let mut cap_row = BTreeMap::new();
        for ((i, e), cols) in uses {
            let mut coeffs: Vec<(usize, Rat)> = cols.iter().map(|&j| (f_var[j], Rat::one())).collect();
            coeffs.push((e, -scale.clone()));
            cap_row.insert((i, e), lp.add_row(coeffs, Sense::Le, Rat::zero()));
        }
        Master {
            lp,
            y_var,
            f_var,
            admissible: admissible.to_vec(),
            cover_row,
            flow_row,
            bound_row,
            cap_row,
        }
    }

    fn duals(&self, row_duals: &[Rat], objective: &[Rat], scale: &Rat) -> DualState {
        let m = objective.len();
        let mut path_prices: BTreeMap<DemandId, Vec<Rat>> = BTreeMap::new();
        for (&(i, e), &r) in &self.cap_row {
            path_prices.entry(self.admissible[i]).or_insert_with(|| vec![Rat::zero(); m])[e] = -row_duals[r].clone();
        }
        let mut edge_duals = objective.to_vec();
        for z in path_prices.values() {
            for e in 0..m {
                edge_duals[e] -= scale * &z[e];
            }
        }
        DualState {
            edge_duals,
            pair_duals: self
                .admissible
                .iter()
                .zip(&self.bound_row)
                .map(|(&d, &r)| (d, -row_duals[r].clone()))
                .collect(),
            path_prices,
            w: self
                .admissible
                .iter()
                .zip(&self.flow_row)
                .map(|(&d, &r)| (d, row_duals[r].clone().max(Rat::zero())))
                .collect(),
            cover: row_duals[self.cover_row].clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThinChoice {
    JunctionTree,
    Rounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThinStep {
    /// Newly bought edges (disjoint from the already-bought set).
    pub edges: BTreeSet<EdgeId>,
    pub resolved: BTreeSet<DemandId>,
    /// Incremental cost over `resolved`.
    pub density: Rat,
    pub choice: ThinChoice,
    pub k1_density: Option<Rat>,
    pub k2_density: Option<Rat>,
    /// Rounding attempts made (0 when the LP was infeasible).
    pub retries: usize,
    /// `y_d` per demand of the LP solution, when the LP was solved.
    pub y_hat: BTreeMap<DemandId, Rat>,
}

#[derive(Debug, Clone)]
pub struct ThinOptions {
    pub backend: Backend,
    /// Rounding attempts before giving up on the LP branch.
    pub retry_cap: usize,
}

impl Default for ThinOptions {
    fn default() -> Self {
        ThinOptions {
            backend: Backend::Greedy,
            retry_cap: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThinError {
    #[error("neither the junction tree nor the rounded LP resolves any remaining demand")]
    NoProgress,
}

/// One iteration of the thin phase: `K1` is a minimum-density junction tree
/// over `remaining`, `K2` a rounding of the thin LP that resolves at least
/// `ceil(|remaining| / 6)` demands. Returns whichever has the smaller exact
/// density; ties go to `K1`.
pub fn thin_iteration(
    inst: &Instance,
    remaining: &[DemandId],
    bought: &BTreeSet<EdgeId>,
    budget: &Rat,
    eps: &Rat,
    seed: u64,
    opts: &ThinOptions,
) -> Result<ThinStep, ThinError> {
    let prices: Vec<Rat> = inst
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| if bought.contains(&e) { Rat::zero() } else { edge.cost.clone() })
        .collect();
    let evaluate = |extra: &BTreeSet<EdgeId>| -> (BTreeSet<EdgeId>, BTreeSet<DemandId>, Rat) {
        let new: BTreeSet<EdgeId> = extra.difference(bought).copied().collect();
        let mask = graph::mask_of(inst.m(), bought.iter().chain(&new));
        let resolved: BTreeSet<DemandId> = resolved_by_mask(inst, &mask, remaining).into_iter().collect();
        let cost = inst.cost_of(&new);
        (new, resolved, cost)
    };
    let density = |cost: &Rat, resolved: usize| cost / Rat::from_integer(resolved.into());

    let query = JtQuery {
        prices: Some(&prices),
        roots: None,
    };
    let k1 = min_density_jt(inst, remaining, &query, opts.backend)
        .ok()
        .map(|t| evaluate(&t.edge_ids))
        .filter(|(_, r, _)| !r.is_empty());

    let quota = ceil_div_usize(remaining.len(), 6);
    let mut retries = 0;
    let mut y_hat = BTreeMap::new();
    let mut k2 = None;
    if let Ok(frac) = solve_thin_lp_priced(inst, remaining, budget, eps, &prices) {
        y_hat = frac.y.clone();
        for attempt in 0..opts.retry_cap {
            retries += 1;
            let picked = round_thin(&frac.x, inst.n(), seed::derive(seed, seed::ROUND_THIN, attempt as u64));
            let out = evaluate(&picked);
            if out.1.len() >= quota.max(1) {
                k2 = Some(out);
                break;
            }
        }
    }

    let k1_density = k1.as_ref().map(|(_, r, c)| density(c, r.len()));
    let k2_density = k2.as_ref().map(|(_, r, c)| density(c, r.len()));
    let take_k2 = match (&k1_density, &k2_density) {
        (Some(a), Some(b)) => b < a,
        (None, Some(_)) => true,
        (_, None) => false,
    };
    let (choice, (edges, resolved, cost)) = if take_k2 {
        (ThinChoice::Rounded, k2.expect("k2 present"))
    } else {
        (ThinChoice::JunctionTree, k1.ok_or(ThinError::NoProgress)?)
    };
    Ok(ThinStep {
        density: density(&cost, resolved.len()),
        edges,
        resolved,
        choice,
        k1_density,
        k2_density,
        retries,
        y_hat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;
    use crate::rational::{int, ratio};

    #[test]
    fn single_forced_column() {
        let inst = parse_instance("graph 3 2\ne 0 1 2 1\ne 1 2 3 1\ndemands 1\nd 0 2 2\n").unwrap();
        let f = solve_thin_lp(&inst, &[0], &int(5), &ratio(1, 10)).unwrap();
        assert_eq!(f.x, vec![int(1), int(1)]);
        assert_eq!(f.y[&0], int(1));
        assert_eq!(f.objective, int(5));
        assert_eq!(f.master_value * ratio(11, 10), int(5));
    }

    #[test]
    fn infeasible_when_too_few_cheap_paths() {
        let inst = parse_instance(
            "graph 4 2\ne 0 1 9 1\ne 2 3 9 1\ndemands 2\nd 0 1 1\nd 2 3 1\n",
        )
        .unwrap();
        assert_eq!(
            solve_thin_lp(&inst, &[0, 1], &int(1), &ratio(1, 10)),
            Err(ThinLpError::Infeasible { admissible: 0, required: 1 })
        );
    }

    #[test]
    fn invariants_and_weak_duality_on_suite() {
        let eps = ratio(1, 10);
        for inst in crate::generate::oracle_suite(15, 900) {
            let all: Vec<DemandId> = (0..inst.k()).collect();
            let budget = inst.total_cost() / int(3);
            let Ok(f) = solve_thin_lp(&inst, &all, &budget, &eps) else { continue };
            let total_y: Rat = f.y.values().sum();
            assert!(total_y >= Rat::from_integer(f.required.into()));
            for (&d, y) in &f.y {
                assert_eq!(f.flow_into(d), *y);
                assert!(*y <= int(1));
            }
            for c in &f.columns {
                let dem = inst.demand(c.demand);
                assert!(graph::path_length(&inst, &c.edge_ids) <= dem.bound);
                assert!(inst.cost_of(&c.edge_ids) <= budget);
                assert!(!c.flow.is_negative());
            }
            for &d in f.y.keys() {
                for e in 0..inst.m() {
                    let through: Rat = f
                        .columns
                        .iter()
                        .filter(|c| c.demand == d && c.edge_ids.contains(&e))
                        .map(|c| c.flow.clone())
                        .sum();
                    assert!(through <= &f.x[e] * one_plus(&eps));
                    assert!(f.x[e] <= int(1));
                }
            }
            assert!(f.duals.is_nonnegative());
            for (dual, primal) in &f.duality_log {
                assert!(dual <= primal);
            }
            assert_eq!(f.objective, &f.master_value * one_plus(&eps));
        }
    }

    #[test]
    fn objective_equals_enumerated_path_lp() {
        use crate::oracle::{exact_lp3, OracleBudget};
        let eps = ratio(1, 10);
        let ob = OracleBudget::default();
        for inst in crate::generate::oracle_suite(25, 901) {
            let all: Vec<DemandId> = (0..inst.k()).collect();
            for div in [1, 2, 4, 8] {
                let budget = inst.total_cost() / int(div);
                match (solve_thin_lp(&inst, &all, &budget, &eps), exact_lp3(&inst, &all, &budget, &ob)) {
                    (Ok(f), Ok(e)) => assert_eq!(f.objective, e.value),
                    (Err(ThinLpError::Infeasible { .. }), Err(_)) => {}
                    (a, b) => panic!("disagreement at budget {budget}: {a:?} vs {b:?}"),
                }
            }
        }
    }

    #[test]
    fn thin_iteration_resolves_exactly_what_it_reports() {
        let eps = ratio(1, 10);
        for (i, inst) in crate::generate::tiny_suite(10, 50).into_iter().enumerate() {
            let all: Vec<DemandId> = (0..inst.k()).collect();
            let budget = inst.total_cost();
            let step = thin_iteration(&inst, &all, &BTreeSet::new(), &budget, &eps, i as u64, &ThinOptions::default())
                .unwrap();
            let mask = graph::mask_of(inst.m(), &step.edges);
            let check: BTreeSet<DemandId> = resolved_by_mask(&inst, &mask, &all).into_iter().collect();
            assert_eq!(check, step.resolved);
            assert_eq!(step.density, inst.cost_of(&step.edges) / Rat::from_integer(step.resolved.len().into()));
            for d in [&step.k1_density, &step.k2_density].into_iter().flatten() {
                assert!(step.density <= *d);
            }
        }
    }
}
