use crate::graph;
use crate::instance::{EdgeId, Instance, VertexId};
use crate::rational::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Walks from the anchor to each vertex.
    Forward,
    /// Walks from each vertex to the anchor.
    Backward,
}

/// Minimum cost of a walk between the anchor and every vertex, for every
/// length budget `0..=cap`.
///
/// `cost(v, l)` is the minimum over walks of total length at most `l`, so it
/// is non-increasing in `l`.
#[derive(Debug, Clone)]
pub struct CostLengthTable {
    anchor: VertexId,
    direction: Direction,
    cap: u64,
    exact: Vec<Vec<Option<Rat>>>,
    link: Vec<Vec<Option<EdgeId>>>,
    best_len: Vec<Vec<Option<u64>>>,
}

impl CostLengthTable {
    pub fn build(
        inst: &Instance,
        anchor: VertexId,
        direction: Direction,
        costs: &[Rat],
        cap: u64,
    ) -> Self {
        let n = inst.n();
        let width = cap as usize + 1;
        let mut exact: Vec<Vec<Option<Rat>>> = vec![vec![None; width]; n];
        let mut link: Vec<Vec<Option<EdgeId>>> = vec![vec![None; width]; n];
        exact[anchor][0] = Some(Rat::default());
        for l in 1..width {
            for v in 0..n {
                let adj = match direction {
                    Direction::Forward => inst.in_edges(v),
                    Direction::Backward => inst.out_edges(v),
                };
                let mut best: Option<(Rat, EdgeId)> = None;
                for &e in adj {
                    let edge = inst.edge(e);
                    let len = edge.length as usize;
                    if len > l {
                        continue;
                    }
                    let other = match direction {
                        Direction::Forward => edge.tail,
                        Direction::Backward => edge.head,
                    };
                    if let Some(base) = &exact[other][l - len] {
                        let cand = base + &costs[e];
                        if best.as_ref().is_none_or(|(c, _)| cand < *c) {
                            best = Some((cand, e));
                        }
                    }
                }
                if let Some((c, e)) = best {
                    exact[v][l] = Some(c);
                    link[v][l] = Some(e);
                }
            }
        }
        let mut best_len = vec![vec![None; width]; n];
        for v in 0..n {
            let mut cur: Option<u64> = None;
            for l in 0..width {
                if let Some(c) = &exact[v][l] {
                    let better = match cur {
                        None => true,
                        Some(bl) => c < exact[v][bl as usize].as_ref().unwrap(),
                    };
                    if better {
                        cur = Some(l as u64);
                    }
                }
                best_len[v][l] = cur;
            }
        }
        CostLengthTable {
            anchor,
            direction,
            cap,
            exact,
            link,
            best_len,
        }
    }

    pub fn anchor(&self) -> VertexId {
        self.anchor
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Minimum cost within length `l` (clamped to the cap).
    pub fn cost(&self, v: VertexId, l: u64) -> Option<&Rat> {
        let l = l.min(self.cap) as usize;
        let bl = self.best_len[v][l]?;
        self.exact[v][bl as usize].as_ref()
    }

    /// The smallest length attaining [`Self::cost`].
    pub fn length(&self, v: VertexId, l: u64) -> Option<u64> {
        self.best_len[v][l.min(self.cap) as usize]
    }

    /// A simple path realizing `cost(v, l)` in travel order.
    pub fn path(&self, inst: &Instance, v: VertexId, l: u64) -> Option<Vec<EdgeId>> {
        let mut l = self.length(v, l)? as usize;
        let mut at = v;
        let mut walk = Vec::new();
        while !(at == self.anchor && l == 0) {
            let e = self.link[at][l].expect("table entry has a link");
            walk.push(e);
            let edge = inst.edge(e);
            l -= edge.length as usize;
            at = match self.direction {
                Direction::Forward => edge.tail,
                Direction::Backward => edge.head,
            };
        }
        if self.direction == Direction::Forward {
            walk.reverse();
        }
        Some(graph::simplify_walk(inst, &walk))
    }
}
