use crate::instance::Instance;
use crate::rational::{int, Rat};
use crate::solution::resolved_by_mask;
use num_traits::{Signed, Zero};

/// Doubling guesses `tau0, 2 tau0, 4 tau0, ...` for the optimum cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauSchedule {
    pub values: Vec<Rat>,
    /// Minimum positive edge cost; `None` when every edge is free.
    pub tau0: Option<Rat>,
}

/// Starts at the minimum positive cost and doubles until the total cost is
/// reached. Empty when zero-cost edges alone resolve every demand.
pub fn tau_schedule(inst: &Instance) -> TauSchedule {
    let tau0 = inst.edges().iter().map(|e| &e.cost).filter(|c| c.is_positive()).min().cloned();
    let free: Vec<bool> = inst.edges().iter().map(|e| e.cost.is_zero()).collect();
    let all: Vec<usize> = (0..inst.k()).collect();
    if resolved_by_mask(inst, &free, &all).len() == all.len() {
        return TauSchedule { values: Vec::new(), tau0 };
    }
    let total = inst.total_cost();
    let mut values = Vec::new();
    if let Some(t0) = &tau0 {
        let mut tau = t0.clone();
        loop {
            values.push(tau.clone());
            if tau >= total {
                break;
            }
            tau *= int(2);
        }
    }
    TauSchedule { values, tau0 }
}
