//! Two-phase primal simplex over exact rationals (dense tableau, sparse row
//! updates).

use crate::rational::Rat;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub coeffs: Vec<(usize, Rat)>,
    pub sense: Sense,
    pub rhs: Rat,
}

/// `min objective . x` subject to `rows`, `x >= 0`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rat>,
    pub rows: Vec<Row>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![Rat::zero(); num_vars],
            rows: Vec::new(),
        }
    }

    pub fn add_var(&mut self, cost: Rat) -> usize {
        self.objective.push(cost);
        self.num_vars += 1;
        self.num_vars - 1
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, Rat)>, sense: Sense, rhs: Rat) -> usize {
        self.rows.push(Row { coeffs, sense, rhs });
        self.rows.len() - 1
    }

    /// Objective value and row activities of a point.
    pub fn evaluate(&self, x: &[Rat]) -> (Rat, Vec<Rat>) {
        let value = self.objective.iter().zip(x).fold(Rat::zero(), |a, (c, v)| a + c * v);
        let acts = self
            .rows
            .iter()
            .map(|r| r.coeffs.iter().fold(Rat::zero(), |a, (j, c)| a + c * &x[*j]))
            .collect();
        (value, acts)
    }

    /// Exact primal feasibility check.
    pub fn is_feasible(&self, x: &[Rat]) -> bool {
        if x.len() != self.num_vars || x.iter().any(Signed::is_negative) {
            return false;
        }
        let (_, acts) = self.evaluate(x);
        self.rows.iter().zip(acts).all(|(r, a)| match r.sense {
            Sense::Le => a <= r.rhs,
            Sense::Ge => a >= r.rhs,
            Sense::Eq => a == r.rhs,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<Rat>,
    pub value: Rat,
    /// One dual per row: `>= 0` on `Ge` rows, `<= 0` on `Le` rows, free on
    /// `Eq` rows; `sum duals * rhs = value` and `objective - A^T duals >= 0`.
    pub duals: Vec<Rat>,
    pub pivots: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

/// Consecutive degenerate pivots tolerated before switching to Bland's rule.
const DEGENERATE_STREAK: usize = 32;

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    /// Reduced costs; `obj_value` is the current objective.
    reduced: Vec<Rat>,
    obj_value: Rat,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, p: usize, q: usize) {
        self.pivots += 1;
        let inv = Rat::from_integer(1.into()) / &self.rows[p][q];
        if inv != Rat::from_integer(1.into()) {
            for v in self.rows[p].iter_mut().filter(|v| !v.is_zero()) {
                *v *= &inv;
            }
            self.rhs[p] *= &inv;
        }
        let support: Vec<usize> = (0..self.rows[p].len()).filter(|&j| !self.rows[p][j].is_zero()).collect();
        let pivot_row = std::mem::take(&mut self.rows[p]);
        let pivot_rhs = self.rhs[p].clone();
        for i in 0..self.rows.len() {
            if i == p || self.rows[i][q].is_zero() {
                continue;
            }
            let f = self.rows[i][q].clone();
            for &j in &support {
                let delta = &f * &pivot_row[j];
                self.rows[i][j] -= delta;
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.reduced[q].is_zero() {
            let f = self.reduced[q].clone();
            for &j in &support {
                let delta = &f * &pivot_row[j];
                self.reduced[j] -= delta;
            }
            self.obj_value += &f * &pivot_rhs;
        }
        self.rows[p] = pivot_row;
        self.basis[p] = q;
    }

    /// Runs simplex iterations over columns allowed by `eligible`.
    /// Returns false when unbounded.
    fn optimize(&mut self, eligible: &[bool]) -> bool {
        let mut streak = 0usize;
        let mut bland = false;
        loop {
            let entering = if bland {
                (0..eligible.len()).find(|&j| eligible[j] && self.reduced[j].is_negative())
            } else {
                (0..eligible.len())
                    .filter(|&j| eligible[j] && self.reduced[j].is_negative())
                    .min_by(|&a, &b| self.reduced[a].cmp(&self.reduced[b]).then(a.cmp(&b)))
            };
            let Some(q) = entering else { return true };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][q];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let take = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                };
                if take {
                    leave = Some((i, ratio));
                }
            }
            let Some((p, ratio)) = leave else { return false };
            if ratio.is_zero() {
                streak += 1;
                if streak >= DEGENERATE_STREAK {
                    bland = true;
                }
            } else {
                streak = 0;
            }
            self.pivot(p, q);
        }
    }

    fn set_costs(&mut self, costs: &[Rat]) {
        self.reduced = costs.to_vec();
        self.obj_value = Rat::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (j, v) in self.rows[i].iter().enumerate() {
                if !v.is_zero() {
                    self.reduced[j] -= cb * v;
                }
            }
            self.obj_value += cb * &self.rhs[i];
        }
    }
}

pub fn solve(lp: &LinearProgram) -> LpOutcome {
    let m = lp.rows.len();
    let n = lp.num_vars;
    // Column layout: structural | slack-or-surplus per inequality | artificial per Ge/Eq row.
    let mut negated = vec![false; m];
    let mut senses = Vec::with_capacity(m);
    for (i, r) in lp.rows.iter().enumerate() {
        let mut s = r.sense;
        if r.rhs.is_negative() {
            negated[i] = true;
            s = match s {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
                Sense::Eq => Sense::Eq,
            };
        }
        senses.push(s);
    }
    let mut slack_col = vec![None; m];
    let mut art_col = vec![None; m];
    let mut next = n;
    for i in 0..m {
        if senses[i] != Sense::Eq {
            slack_col[i] = Some(next);
            next += 1;
        }
    }
    for i in 0..m {
        if senses[i] != Sense::Le {
            art_col[i] = Some(next);
            next += 1;
        }
    }
    let width = next;
    let mut rows = vec![vec![Rat::zero(); width]; m];
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut identity = Vec::with_capacity(m);
    for (i, r) in lp.rows.iter().enumerate() {
        let sign = if negated[i] { -Rat::from_integer(1.into()) } else { Rat::from_integer(1.into()) };
        for (j, c) in &r.coeffs {
            rows[i][*j] += c * &sign;
        }
        rhs.push(&r.rhs * &sign);
        match senses[i] {
            Sense::Le => rows[i][slack_col[i].unwrap()] = Rat::from_integer(1.into()),
            Sense::Ge => rows[i][slack_col[i].unwrap()] = -Rat::from_integer(1.into()),
            Sense::Eq => {}
        }
        if let Some(a) = art_col[i] {
            rows[i][a] = Rat::from_integer(1.into());
        }
        let id = art_col[i].or(slack_col[i]).unwrap();
        basis.push(id);
        identity.push(id);
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis,
        reduced: Vec::new(),
        obj_value: Rat::zero(),
        pivots: 0,
    };
    let is_art: Vec<bool> = (0..width).map(|j| art_col.contains(&Some(j))).collect();

    if is_art.iter().any(|&a| a) {
        let phase1: Vec<Rat> = (0..width)
            .map(|j| if is_art[j] { Rat::from_integer(1.into()) } else { Rat::zero() })
            .collect();
        t.set_costs(&phase1);
        let all = vec![true; width];
        t.optimize(&all);
        if t.obj_value.is_positive() {
            return LpOutcome::Infeasible;
        }
        // Drive zero-level artificials out of the basis where possible.
        for i in 0..m {
            if !is_art[t.basis[i]] {
                continue;
            }
            if let Some(q) = (0..width).find(|&j| !is_art[j] && !t.rows[i][j].is_zero()) {
                t.pivot(i, q);
            }
        }
    }

    let mut costs = vec![Rat::zero(); width];
    costs[..n].clone_from_slice(&lp.objective);
    t.set_costs(&costs);
    let eligible: Vec<bool> = (0..width).map(|j| !is_art[j]).collect();
    if !t.optimize(&eligible) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![Rat::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs[i].clone();
        }
    }
    let duals = (0..m)
        .map(|i| {
            let y = -t.reduced[identity[i]].clone();
            if negated[i] {
                -y
            } else {
                y
            }
        })
        .collect();
    LpOutcome::Optimal(LpSolution {
        x,
        value: t.obj_value.clone(),
        duals,
        pivots: t.pivots,
    })
}
