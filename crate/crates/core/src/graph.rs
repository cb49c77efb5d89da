//! Length-only shortest paths over (sub)graphs of an instance.

use crate::instance::{EdgeId, Instance, VertexId};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// `None` means every edge is enabled.
pub type EdgeMask<'a> = Option<&'a [bool]>;

fn enabled(mask: EdgeMask<'_>, e: EdgeId) -> bool {
    mask.is_none_or(|m| m[e])
}

fn dijkstra(
    inst: &Instance,
    root: VertexId,
    mask: EdgeMask<'_>,
    backward: bool,
) -> (Vec<Option<u64>>, Vec<Option<EdgeId>>) {
    let n = inst.n();
    let mut dist: Vec<Option<u64>> = vec![None; n];
    let mut via: Vec<Option<EdgeId>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[root] = Some(0);
    heap.push(Reverse((0u64, root)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if dist[v] != Some(d) {
            continue;
        }
        let adj = if backward {
            inst.in_edges(v)
        } else {
            inst.out_edges(v)
        };
        for &e in adj {
            if !enabled(mask, e) {
                continue;
            }
            let edge = inst.edge(e);
            let w = if backward { edge.tail } else { edge.head };
            let nd = d + edge.length;
            if dist[w].is_none_or(|cur| nd < cur) {
                dist[w] = Some(nd);
                via[w] = Some(e);
                heap.push(Reverse((nd, w)));
            }
        }
    }
    (dist, via)
}

pub fn distances_from(inst: &Instance, source: VertexId, mask: EdgeMask<'_>) -> Vec<Option<u64>> {
    dijkstra(inst, source, mask, false).0
}

/// Distance from every vertex to `sink`.
pub fn distances_to(inst: &Instance, sink: VertexId, mask: EdgeMask<'_>) -> Vec<Option<u64>> {
    dijkstra(inst, sink, mask, true).0
}

pub fn distance(inst: &Instance, s: VertexId, t: VertexId, mask: EdgeMask<'_>) -> Option<u64> {
    distances_from(inst, s, mask)[t]
}

pub fn all_pairs(inst: &Instance, mask: EdgeMask<'_>) -> Vec<Vec<Option<u64>>> {
    (0..inst.n()).map(|s| distances_from(inst, s, mask)).collect()
}

/// A minimum-length `s ~> t` path as edge ids.
pub fn shortest_path(
    inst: &Instance,
    s: VertexId,
    t: VertexId,
    mask: EdgeMask<'_>,
) -> Option<Vec<EdgeId>> {
    let (dist, via) = dijkstra(inst, s, mask, false);
    dist[t]?;
    let mut path = Vec::new();
    let mut v = t;
    while v != s {
        let e = via[v].expect("reachable vertex has a predecessor");
        path.push(e);
        v = inst.edge(e).tail;
    }
    path.reverse();
    Some(path)
}

pub fn mask_of<'a, I: IntoIterator<Item = &'a EdgeId>>(m: usize, ids: I) -> Vec<bool> {
    let mut mask = vec![false; m];
    for &e in ids {
        mask[e] = true;
    }
    mask
}

/// Drops cycles from a walk, keeping the first visit of each vertex.
/// Never increases cost or length since both are non-negative.
pub fn simplify_walk(inst: &Instance, walk: &[EdgeId]) -> Vec<EdgeId> {
    let Some(&first) = walk.first() else {
        return Vec::new();
    };
    let mut vertices = vec![inst.edge(first).tail];
    let mut out: Vec<EdgeId> = Vec::new();
    for &e in walk {
        let head = inst.edge(e).head;
        if let Some(pos) = vertices.iter().position(|&v| v == head) {
            vertices.truncate(pos + 1);
            out.truncate(pos);
        } else {
            vertices.push(head);
            out.push(e);
        }
    }
    out
}

pub fn path_length(inst: &Instance, path: &[EdgeId]) -> u64 {
    path.iter().map(|&e| inst.edge(e).length).sum()
}

/// True when `path` is a contiguous walk from `s` to `t`.
pub fn is_walk(inst: &Instance, path: &[EdgeId], s: VertexId, t: VertexId) -> bool {
    let mut at = s;
    for &e in path {
        let edge = inst.edge(e);
        if edge.tail != at {
            return false;
        }
        at = edge.head;
    }
    at == t
}
