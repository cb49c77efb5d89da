use crate::instance::{Demand, DemandId, EdgeId, Instance, VertexId};
use crate::rational::Rat;
use std::collections::BTreeMap;

/// A vertex of the layered graph. Layers count edges, so the construction
/// tracks lengths only on unit-length graphs (see [`super::unit_length_expand`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LayerVertex {
    /// `(v, layer)`; the root appears only at layer 0, others never do.
    Core(VertexId, i64),
    /// Private copy of a demand's source at layer `-i`.
    SourceCopy(DemandId, i64),
    /// Private copy of a demand's sink at layer `j`.
    SinkCopy(DemandId, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredArc {
    pub from: usize,
    pub to: usize,
    pub weight: Rat,
    /// Originating edge; `None` for terminal attachments.
    pub origin: Option<EdgeId>,
}

#[derive(Debug, Clone)]
pub struct LayeredGraph {
    pub root: VertexId,
    pub vertices: Vec<LayerVertex>,
    pub core_count: usize,
    pub arcs: Vec<LayeredArc>,
    /// Per demand, the admissible `(source copy, sink copy)` index pairs:
    /// layers `-i` and `j` with `i + j <= bound`.
    pub relations: BTreeMap<DemandId, Vec<(usize, usize)>>,
    index: BTreeMap<LayerVertex, usize>,
}

impl LayeredGraph {
    pub fn index_of(&self, v: LayerVertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn out_arcs(&self, v: usize) -> impl Iterator<Item = &LayeredArc> {
        self.arcs.iter().filter(move |a| a.from == v)
    }
}

/// Demands are taken by value (not validated against the graph); relation
/// and copy ids are positions in `demands`.
pub fn build_layered_graph(inst: &Instance, r: VertexId, demands: &[Demand]) -> LayeredGraph {
    let n = inst.n() as i64;
    let mut vertices = Vec::new();
    for v in 0..inst.n() {
        if v == r {
            vertices.push(LayerVertex::Core(v, 0));
            continue;
        }
        for layer in (-(n - 1)..=n - 1).filter(|&l| l != 0) {
            vertices.push(LayerVertex::Core(v, layer));
        }
    }
    let core_count = vertices.len();
    let mut index: BTreeMap<LayerVertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    let mut arcs = Vec::new();
    for (e, edge) in inst.edges().iter().enumerate() {
        for layer in -(n - 1)..n - 1 {
            let (Some(&from), Some(&to)) = (
                index.get(&LayerVertex::Core(edge.tail, layer)),
                index.get(&LayerVertex::Core(edge.head, layer + 1)),
            ) else {
                continue;
            };
            arcs.push(LayeredArc {
                from,
                to,
                weight: edge.cost.clone(),
                origin: Some(e),
            });
        }
    }

    let core_layers = |v: VertexId, sign: i64| -> Vec<i64> {
        if v == r {
            vec![0]
        } else {
            (1..n).map(|i| sign * i).collect()
        }
    };
    let mut relations = BTreeMap::new();
    for (id, &d) in demands.iter().enumerate() {
        let mut sources = Vec::new();
        for layer in core_layers(d.source, -1) {
            let copy = vertices.len();
            vertices.push(LayerVertex::SourceCopy(id, layer));
            index.insert(LayerVertex::SourceCopy(id, layer), copy);
            arcs.push(LayeredArc {
                from: copy,
                to: index[&LayerVertex::Core(d.source, layer)],
                weight: Rat::default(),
                origin: None,
            });
            sources.push((copy, -layer));
        }
        let mut sinks = Vec::new();
        for layer in core_layers(d.sink, 1) {
            let copy = vertices.len();
            vertices.push(LayerVertex::SinkCopy(id, layer));
            index.insert(LayerVertex::SinkCopy(id, layer), copy);
            arcs.push(LayeredArc {
                from: index[&LayerVertex::Core(d.sink, layer)],
                to: copy,
                weight: Rat::default(),
                origin: None,
            });
            sinks.push((copy, layer));
        }
        let pairs = sources
            .iter()
            .flat_map(|&(a, i)| sinks.iter().map(move |&(b, j)| (a, i, b, j)))
            .filter(|&(_, i, _, j)| (i + j) as u64 <= d.bound)
            .map(|(a, _, b, _)| (a, b))
            .collect();
        relations.insert(id, pairs);
    }
    LayeredGraph {
        root: r,
        vertices,
        core_count,
        arcs,
        relations,
        index,
    }
}
