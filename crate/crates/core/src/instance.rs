//! Instance data model and the line-oriented instance file format.
//!
//! ```text
//! # comment
//! graph <n> <m>
//! e <tail> <head> <cost> <length>      (m lines)
//! demands <k>
//! d <source> <sink> <distBound>        (k lines)
//! ```
//!
//! Costs are exact rationals (`3/2`, `1.25`, `4`). Lengths are positive
//! integers. A rational distance bound is floored, since every path length
//! is integral; the floored demand ids are kept in [`Instance::floored_bounds`].

use crate::graph;
use crate::rational::{fmt_rat, parse_rat, Rat};
use num_traits::{Signed, Zero};
use std::collections::HashSet;
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type DemandId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub cost: Rat,
    pub length: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Demand {
    pub source: VertexId,
    pub sink: VertexId,
    pub bound: u64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: edge length must be a positive integer, got `{value}`")]
    BadLength { line: usize, value: String },
    #[error("edge {tail}->{head}: cost must be non-negative")]
    NegativeCost { tail: VertexId, head: VertexId },
    #[error("duplicate arc {tail}->{head}")]
    DuplicateArc { tail: VertexId, head: VertexId },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: VertexId },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("demand {demand}: source equals sink ({vertex})")]
    SourceEqualsSink { demand: DemandId, vertex: VertexId },
    #[error("demand {demand}: bound {bound} is below the shortest distance {}", fmt_dist(*.shortest))]
    DistBelowShortest {
        demand: DemandId,
        bound: u64,
        shortest: Option<u64>,
    },
}

fn fmt_dist(d: Option<u64>) -> String {
    d.map_or_else(|| "inf (unreachable)".to_string(), |v| v.to_string())
}

impl InstanceError {
    /// Malformed text, as opposed to a well-formed but invalid instance.
    pub fn is_syntax(&self) -> bool {
        matches!(self, InstanceError::Syntax { .. } | InstanceError::BadLength { .. })
    }
}

/// A directed graph with per-edge cost and length plus bounded demand pairs.
///
/// Immutable once built; every constructor validates the instance invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    edges: Vec<Edge>,
    demands: Vec<Demand>,
    out_adj: Vec<Vec<EdgeId>>,
    in_adj: Vec<Vec<EdgeId>>,
    floored_bounds: Vec<DemandId>,
}

impl Instance {
    pub fn new(n: usize, edges: Vec<Edge>, demands: Vec<Demand>) -> Result<Self, InstanceError> {
        let graph = Self::graph(n, edges)?;
        graph.with_demands(demands)
    }

    /// Graph with no demands.
    pub fn graph(n: usize, edges: Vec<Edge>) -> Result<Self, InstanceError> {
        let mut seen = HashSet::new();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            for v in [e.tail, e.head] {
                if v >= n {
                    return Err(InstanceError::VertexOutOfRange { vertex: v, n });
                }
            }
            if e.tail == e.head {
                return Err(InstanceError::SelfLoop { vertex: e.tail });
            }
            if e.length == 0 {
                return Err(InstanceError::BadLength {
                    line: 0,
                    value: "0".into(),
                });
            }
            if e.cost.is_negative() {
                return Err(InstanceError::NegativeCost {
                    tail: e.tail,
                    head: e.head,
                });
            }
            if !seen.insert((e.tail, e.head)) {
                return Err(InstanceError::DuplicateArc {
                    tail: e.tail,
                    head: e.head,
                });
            }
            out_adj[e.tail].push(id);
            in_adj[e.head].push(id);
        }
        Ok(Instance {
            n,
            edges,
            demands: Vec::new(),
            out_adj,
            in_adj,
            floored_bounds: Vec::new(),
        })
    }

    /// Same graph, new demand set (validated against the full graph).
    pub fn with_demands(&self, demands: Vec<Demand>) -> Result<Self, InstanceError> {
        for (id, d) in demands.iter().enumerate() {
            self.check_demand(id, d)?;
        }
        Ok(Instance {
            demands,
            floored_bounds: Vec::new(),
            ..self.clone()
        })
    }

    pub fn check_demand(&self, id: DemandId, d: &Demand) -> Result<(), InstanceError> {
        for v in [d.source, d.sink] {
            if v >= self.n {
                return Err(InstanceError::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if d.source == d.sink {
            return Err(InstanceError::SourceEqualsSink {
                demand: id,
                vertex: d.source,
            });
        }
        let shortest = graph::distances_from(self, d.source, None)[d.sink];
        match shortest {
            Some(s) if s <= d.bound => Ok(()),
            _ => Err(InstanceError::DistBelowShortest {
                demand: id,
                bound: d.bound,
                shortest,
            }),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn k(&self) -> usize {
        self.demands.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn demands(&self) -> &[Demand] {
        &self.demands
    }

    pub fn demand(&self, id: DemandId) -> &Demand {
        &self.demands[id]
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_adj[v]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_adj[v]
    }

    /// Demand ids whose rational bound was floored while parsing.
    pub fn floored_bounds(&self) -> &[DemandId] {
        &self.floored_bounds
    }

    pub fn costs(&self) -> Vec<Rat> {
        self.edges.iter().map(|e| e.cost.clone()).collect()
    }

    pub fn max_length(&self) -> u64 {
        self.edges.iter().map(|e| e.length).max().unwrap_or(1)
    }

    /// `n * max length`, an upper bound on any simple path length.
    pub fn path_length_cap(&self) -> u64 {
        self.n as u64 * self.max_length()
    }

    pub fn total_cost(&self) -> Rat {
        self.edges.iter().fold(Rat::zero(), |acc, e| acc + &e.cost)
    }

    pub fn cost_of<'a, I: IntoIterator<Item = &'a EdgeId>>(&self, ids: I) -> Rat {
        ids.into_iter()
            .fold(Rat::zero(), |acc, &id| acc + &self.edges[id].cost)
    }

    /// Arc-reversed graph with identical edge ids; demands are reversed too.
    pub fn reversed(&self) -> Instance {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                tail: e.head,
                head: e.tail,
                ..e.clone()
            })
            .collect();
        let demands = self
            .demands
            .iter()
            .map(|d| Demand {
                source: d.sink,
                sink: d.source,
                bound: d.bound,
            })
            .collect();
        let mut rev = Instance::graph(self.n, edges).expect("reversal preserves validity");
        rev.demands = demands;
        rev
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("graph {} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            out.push_str(&format!(
                "e {} {} {} {}\n",
                e.tail,
                e.head,
                fmt_cost(&e.cost),
                e.length
            ));
        }
        out.push_str(&format!("demands {}\n", self.demands.len()));
        for d in &self.demands {
            out.push_str(&format!("d {} {} {}\n", d.source, d.sink, d.bound));
        }
        out
    }
}

fn fmt_cost(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        fmt_rat(c)
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    /// Next non-blank, non-comment record as (1-based line, tokens).
    fn next_record(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.inner.by_ref() {
            let body = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = body.split_whitespace().collect();
            if !toks.is_empty() {
                return Some((i + 1, toks));
            }
        }
        None
    }
}

fn syntax(line: usize, message: impl Into<String>) -> InstanceError {
    InstanceError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize, InstanceError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected {what}, got `{tok}`")))
}

fn expect_record<'a>(
    lines: &mut Lines<'a>,
    keyword: &str,
    arity: usize,
) -> Result<(usize, Vec<&'a str>), InstanceError> {
    let (line, toks) = lines
        .next_record()
        .ok_or_else(|| syntax(0, format!("unexpected end of input, expected `{keyword}`")))?;
    if toks[0] != keyword {
        return Err(syntax(
            line,
            format!("expected `{keyword}` record, got `{}`", toks[0]),
        ));
    }
    if toks.len() != arity + 1 {
        return Err(syntax(
            line,
            format!("`{keyword}` takes {arity} fields, got {}", toks.len() - 1),
        ));
    }
    Ok((line, toks))
}

/// Parses a `d <s> <t> <bound>` record body; rational bounds are floored.
/// Returns the demand and whether the bound was floored.
pub fn parse_demand_record(line: usize, toks: &[&str]) -> Result<(Demand, bool), InstanceError> {
    let source = parse_usize(line, toks[1], "source vertex")?;
    let sink = parse_usize(line, toks[2], "sink vertex")?;
    let raw = parse_rat(toks[3]).map_err(|e| syntax(line, e.to_string()))?;
    if raw.is_negative() {
        return Err(syntax(line, "distance bound must be non-negative"));
    }
    let floored = raw.floor();
    let bound = crate::rational::floor_to_u64(&raw)
        .ok_or_else(|| syntax(line, "distance bound out of range"))?;
    Ok((
        Demand {
            source,
            sink,
            bound,
        },
        floored != raw,
    ))
}

pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    let mut lines = Lines::new(text);
    let (line, toks) = expect_record(&mut lines, "graph", 2)?;
    let n = parse_usize(line, toks[1], "vertex count")?;
    let m = parse_usize(line, toks[2], "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line, toks) = expect_record(&mut lines, "e", 4)?;
        let tail = parse_usize(line, toks[1], "tail vertex")?;
        let head = parse_usize(line, toks[2], "head vertex")?;
        let cost = parse_rat(toks[3]).map_err(|e| syntax(line, e.to_string()))?;
        let length: u64 = match toks[4].parse() {
            Ok(l) if l >= 1 => l,
            _ => {
                return Err(InstanceError::BadLength {
                    line,
                    value: toks[4].to_string(),
                })
            }
        };
        if cost.is_negative() {
            return Err(InstanceError::NegativeCost { tail, head });
        }
        edges.push(Edge {
            tail,
            head,
            cost,
            length,
        });
    }
    let graph = Instance::graph(n, edges)?;

    let mut demands = Vec::new();
    let mut floored = Vec::new();
    match lines.next_record() {
        None => {}
        Some((line, toks)) => {
            if toks[0] != "demands" || toks.len() != 2 {
                return Err(syntax(line, "expected `demands <k>`"));
            }
            let k = parse_usize(line, toks[1], "demand count")?;
            for id in 0..k {
                let (line, toks) = expect_record(&mut lines, "d", 3)?;
                let (d, was_floored) = parse_demand_record(line, &toks)?;
                if was_floored {
                    floored.push(id);
                }
                demands.push(d);
            }
        }
    }
    if let Some((line, toks)) = lines.next_record() {
        return Err(syntax(line, format!("unexpected trailing record `{}`", toks[0])));
    }
    let mut inst = graph.with_demands(demands)?;
    inst.floored_bounds = floored;
    Ok(inst)
}

/// Arrival files: one `d <s> <t> <bound>` line per arriving demand.
pub fn parse_arrivals(text: &str) -> Result<Vec<Demand>, InstanceError> {
    let mut lines = Lines::new(text);
    let mut out = Vec::new();
    while let Some((line, toks)) = lines.next_record() {
        if toks[0] != "d" || toks.len() != 4 {
            return Err(syntax(line, "expected `d <source> <sink> <bound>`"));
        }
        out.push(parse_demand_record(line, &toks)?.0);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn parses_minimal_instance() {
        let inst = parse_instance("graph 2 1\ne 0 1 3/2 4\ndemands 1\nd 0 1 4\n").unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.edge(0).cost, ratio(3, 2));
        assert_eq!(inst.edge(0).length, 4);
        assert_eq!(inst.k(), 1);
    }

    #[test]
    fn empty_demand_section() {
        let inst = parse_instance("graph 2 1\ne 0 1 1 1\ndemands 0\n").unwrap();
        assert_eq!(inst.k(), 0);
        let inst = parse_instance("graph 2 1\ne 0 1 1 1\n").unwrap();
        assert_eq!(inst.k(), 0);
    }

    #[test]
    fn bound_below_shortest_is_rejected() {
        let err = parse_instance("graph 2 1\ne 0 1 1 4\ndemands 1\nd 0 1 2\n").unwrap_err();
        assert!(matches!(
            err,
            InstanceError::DistBelowShortest {
                bound: 2,
                shortest: Some(4),
                ..
            }
        ));
        assert!(!err.is_syntax());
    }

    #[test]
    fn rejects_bad_records() {
        let dup = parse_instance("graph 2 2\ne 0 1 1 1\ne 0 1 2 2\n").unwrap_err();
        assert!(matches!(dup, InstanceError::DuplicateArc { tail: 0, head: 1 }));
        let len = parse_instance("graph 2 1\ne 0 1 1 1.5\n").unwrap_err();
        assert!(matches!(len, InstanceError::BadLength { line: 2, .. }));
        let zero = parse_instance("graph 2 1\ne 0 1 1 0\n").unwrap_err();
        assert!(matches!(zero, InstanceError::BadLength { .. }));
        let syn = parse_instance("graph 2 1\n# c\ne 0 x 1 1\n").unwrap_err();
        assert!(matches!(syn, InstanceError::Syntax { line: 3, .. }));
        let same = parse_instance("graph 2 1\ne 0 1 1 1\ndemands 1\nd 1 1 3\n").unwrap_err();
        assert!(matches!(same, InstanceError::SourceEqualsSink { .. }));
        let lp = parse_instance("graph 2 1\ne 1 1 1 1\n").unwrap_err();
        assert!(matches!(lp, InstanceError::SelfLoop { vertex: 1 }));
    }

    #[test]
    fn floors_rational_bounds() {
        let inst = parse_instance("graph 2 1\ne 0 1 1 2\ndemands 1\nd 0 1 5/2\n").unwrap();
        assert_eq!(inst.demand(0).bound, 2);
        assert_eq!(inst.floored_bounds(), &[0]);
    }

    #[test]
    fn text_round_trip() {
        let inst = parse_instance("graph 3 2\ne 0 1 1.5 1\ne 1 2 2 3\ndemands 1\nd 0 2 9\n").unwrap();
        let again = parse_instance(&inst.to_text()).unwrap();
        assert_eq!(inst, again);
        assert_eq!(again.total_cost(), int(7) / int(2));
    }
}
