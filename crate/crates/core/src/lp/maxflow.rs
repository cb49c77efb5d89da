//! Edmonds-Karp maximum flow with exact rational capacities.

use crate::instance::{EdgeId, VertexId};
use crate::rational::Rat;
use num_traits::{Signed, Zero};
use std::collections::{BTreeSet, VecDeque};

pub struct MinCut {
    pub value: Rat,
    /// Source side of a minimum cut.
    pub source_side: BTreeSet<VertexId>,
    /// Arcs from the source side to the sink side.
    pub cut_arcs: BTreeSet<EdgeId>,
}

/// `arcs[i] = (tail, head, capacity)`; `cut_arcs` holds indices into `arcs`.
pub fn min_cut(n: usize, arcs: &[(VertexId, VertexId, Rat)], s: VertexId, t: VertexId) -> MinCut {
    // residual arc 2i is forward, 2i+1 backward
    let mut residual: Vec<Rat> = Vec::with_capacity(arcs.len() * 2);
    let mut adj = vec![Vec::new(); n];
    for (i, (u, v, c)) in arcs.iter().enumerate() {
        residual.push(c.clone());
        residual.push(Rat::zero());
        adj[*u].push(2 * i);
        adj[*v].push(2 * i + 1);
    }
    let head = |r: usize| if r.is_multiple_of(2) { arcs[r / 2].1 } else { arcs[r / 2].0 };
    let mut value = Rat::zero();
    loop {
        let mut via: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &r in &adj[u] {
                let w = head(r);
                if !seen[w] && residual[r].is_positive() {
                    seen[w] = true;
                    via[w] = Some(r);
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            let source_side: BTreeSet<VertexId> = (0..n).filter(|&v| seen[v]).collect();
            let cut_arcs = arcs
                .iter()
                .enumerate()
                .filter(|(_, (u, v, _))| seen[*u] && !seen[*v])
                .map(|(i, _)| i)
                .collect();
            return MinCut {
                value,
                source_side,
                cut_arcs,
            };
        }
        let mut path = Vec::new();
        let mut at = t;
        while let Some(r) = via[at] {
            path.push(r);
            at = head(r ^ 1);
        }
        let push = path.iter().map(|&r| residual[r].clone()).min().expect("non-empty path");
        for &r in &path {
            residual[r] -= &push;
            residual[r ^ 1] += &push;
        }
        value += push;
    }
}
