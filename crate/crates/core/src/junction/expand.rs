use crate::instance::{Edge, EdgeId, Instance};
use crate::rational::Rat;

#[derive(Debug, Clone)]
pub struct ExpandedGraph {
    /// Original vertices keep their ids; subdivision vertices follow.
    pub graph: Instance,
    /// Original edge of every expanded edge.
    pub origin: Vec<EdgeId>,
}

impl ExpandedGraph {
    /// Original edges touched by a set of expanded edges.
    pub fn project<'a, I: IntoIterator<Item = &'a EdgeId>>(&self, ids: I) -> std::collections::BTreeSet<EdgeId> {
        ids.into_iter().map(|&e| self.origin[e]).collect()
    }
}

/// Replaces every edge of length `l` by a path of `l` unit-length edges of
/// cost `c / l` each. Demands are carried over unchanged.
pub fn unit_length_expand(inst: &Instance) -> ExpandedGraph {
    let mut n = inst.n();
    let mut edges = Vec::new();
    let mut origin = Vec::new();
    for (id, e) in inst.edges().iter().enumerate() {
        let piece = &e.cost / Rat::from_integer(e.length.into());
        let mut at = e.tail;
        for step in 0..e.length {
            let next = if step + 1 == e.length {
                e.head
            } else {
                n += 1;
                n - 1
            };
            edges.push(Edge {
                tail: at,
                head: next,
                cost: piece.clone(),
                length: 1,
            });
            origin.push(id);
            at = next;
        }
    }
    let graph = Instance::new(n, edges, inst.demands().to_vec()).expect("subdivision keeps distances");
    ExpandedGraph { graph, origin }
}
