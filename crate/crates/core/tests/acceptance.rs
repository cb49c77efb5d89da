//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Brute-force oracles below are written independently of
//! the library's own search code.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};
use wspanner::generate::{gen_random_instance, oracle_suite, tiny_suite, GenParams};
use wspanner::graph;
use wspanner::instance::{parse_instance, Demand, DemandId, Edge, EdgeId, Instance, VertexId};
use wspanner::junction::{build_layered_graph, greedy_jt_cover, unit_length_expand, Backend, LayerVertex, LayeredGraph};
use wspanner::local::cost_budget;
use wspanner::lp::{inclusion_probability, round_preserver, round_thin, solve_preserver_lp, solve_thin_lp, thin_factor};
use wspanner::oracle::{exact_lp3, exact_min_density_jt, exact_opt, OracleBudget};
use wspanner::paths::{rcsp_price, rsp_exact, rsp_fptas};
use wspanner::pipeline::{
    online_solve, preserver_instance, solve_allpair_preserver, solve_pairwise, solve_single_source, tau_schedule,
    PipelineConfig,
};
use wspanner::rational::{fmt_rat, int, ratio, to_f64, Rat};
use wspanner::solution::resolved_by_mask;
use wspanner::thick::resolve_thick;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn cfg(seed: u64) -> PipelineConfig {
    PipelineConfig {
        seed,
        ..PipelineConfig::default()
    }
}

/// Demands of `inst` sharing the first demand's source.
fn single_source_part(inst: &Instance) -> Instance {
    let Some(first) = inst.demands().first() else {
        return inst.clone();
    };
    let part = inst.demands().iter().filter(|d| d.source == first.source).copied().collect();
    inst.with_demands(part).unwrap()
}

fn feasible(inst: &Instance, edges: &BTreeSet<EdgeId>) -> bool {
    let all: Vec<DemandId> = (0..inst.k()).collect();
    resolved_by_mask(inst, &graph::mask_of(inst.m(), edges), &all).len() == inst.k()
}

/// Every simple `s ~> t` path as (edges, length, cost), by DFS.
fn simple_paths(inst: &Instance, s: VertexId, t: VertexId, max_len: u64) -> Vec<(Vec<EdgeId>, u64, Rat)> {
    fn go(
        inst: &Instance,
        at: VertexId,
        t: VertexId,
        left: u64,
        seen: &mut Vec<bool>,
        path: &mut Vec<EdgeId>,
        out: &mut Vec<(Vec<EdgeId>, u64, Rat)>,
    ) {
        if at == t {
            let len = path.iter().map(|&e| inst.edge(e).length).sum();
            let cost = path.iter().map(|&e| inst.edge(e).cost.clone()).sum();
            out.push((path.clone(), len, cost));
            return;
        }
        for &e in inst.out_edges(at) {
            let edge = inst.edge(e);
            if seen[edge.head] || edge.length > left {
                continue;
            }
            seen[edge.head] = true;
            path.push(e);
            go(inst, edge.head, t, left - edge.length, seen, path, out);
            path.pop();
            seen[edge.head] = false;
        }
    }
    let mut seen = vec![false; inst.n()];
    seen[s] = true;
    let mut out = Vec::new();
    go(inst, s, t, max_len, &mut seen, &mut Vec::new(), &mut out);
    out
}

fn is_path(inst: &Instance, p: &[EdgeId], s: VertexId, t: VertexId) -> bool {
    let mut at = s;
    for &e in p {
        if inst.edge(e).tail != at {
            return false;
        }
        at = inst.edge(e).head;
    }
    at == t
}

fn c1_feasibility() -> Verdict {
    let start = Instant::now();
    let suite = tiny_suite(200, 1);
    let mut failures = Vec::new();
    for (i, inst) in suite.iter().enumerate() {
        let c = cfg(i as u64);
        if !solve_pairwise(inst, &c).solution.is_feasible(inst) {
            failures.push(format!("pairwise#{i}"));
        }
        match online_solve(inst, inst.demands(), &c) {
            Ok(run) if run.solution.is_feasible(inst) => {}
            _ => failures.push(format!("online#{i}")),
        }
        let part = single_source_part(inst);
        match solve_single_source(&part, &c) {
            Ok(run) if run.solution.is_feasible(&part) => {}
            _ => failures.push(format!("single-source#{i}")),
        }
        let pres = preserver_instance(inst);
        match solve_allpair_preserver(inst, &c) {
            Ok(run) if run.solution.is_feasible(&pres) => {}
            _ => failures.push(format!("preserver#{i}")),
        }
    }
    let elapsed = start.elapsed();
    let sizes_ok = suite.iter().all(|g| (4..=10).contains(&g.n()) && g.m() <= 20 && g.k() <= 5 && g.max_length() <= 5);
    verdict(
        failures.is_empty() && sizes_ok && elapsed < Duration::from_secs(60),
        format!(
            "{} instances x 4 modes, {} failures {:?}, {:.1}s (limit 60s)",
            suite.len(),
            failures.len(),
            failures.iter().take(5).collect::<Vec<_>>(),
            elapsed.as_secs_f64()
        ),
    )
}

fn summary(mut ratios: Vec<f64>) -> String {
    if ratios.is_empty() {
        return "none".into();
    }
    ratios.sort_by(f64::total_cmp);
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    format!(
        "min {:.3} median {:.3} mean {:.3} max {:.3}",
        ratios[0],
        ratios[ratios.len() / 2],
        mean,
        ratios[ratios.len() - 1]
    )
}

fn ratio_f64(cost: &Rat, opt: &Rat) -> f64 {
    if opt.is_zero() {
        if cost.is_zero() { 1.0 } else { f64::INFINITY }
    } else {
        to_f64(&(cost / opt))
    }
}

fn c2_oracle_ratio() -> Verdict {
    let start = Instant::now();
    let budget = OracleBudget::default();
    let suite = oracle_suite(50, 2);
    let mut violations = Vec::new();
    let (mut pw, mut on, mut ss) = (Vec::new(), Vec::new(), Vec::new());
    for (i, inst) in suite.iter().enumerate() {
        let opt = exact_opt(inst, &budget).expect("oracle suite is within budget").total_cost;
        let k = Rat::from_integer(inst.k().max(1).into());
        let c = cfg(i as u64);
        let p = solve_pairwise(inst, &c).solution.total_cost;
        let o = online_solve(inst, inst.demands(), &c).unwrap().solution.total_cost;
        for (name, cost, sink) in [("pairwise", &p, &mut pw), ("online", &o, &mut on)] {
            if *cost > &opt * &k {
                violations.push(format!("{name}#{i}"));
            }
            sink.push(ratio_f64(cost, &opt));
        }
        let part = single_source_part(inst);
        let part_opt = exact_opt(&part, &budget).unwrap().total_cost;
        let s = solve_single_source(&part, &c).unwrap().solution.total_cost;
        if s > &part_opt * Rat::from_integer(part.k().max(1).into()) {
            violations.push(format!("single-source#{i}"));
        }
        ss.push(ratio_f64(&s, &part_opt));
    }
    let elapsed = start.elapsed();
    verdict(
        violations.is_empty() && elapsed < Duration::from_secs(180),
        format!(
            "{} instances, ratio <= k violations {:?}; pairwise [{}]; online [{}]; single-source [{}]; {:.1}s (limit 180s)",
            suite.len(),
            violations,
            summary(pw),
            summary(on),
            summary(ss),
            elapsed.as_secs_f64()
        ),
    )
}

fn c3_constrained_paths() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let suite: Vec<Instance> = tiny_suite(200, 3).into_iter().filter(|g| g.n() <= 8).collect();
    let mut exact_checked = 0;
    let mut exact_bad = Vec::new();
    for (gi, inst) in suite.iter().enumerate() {
        for s in 0..inst.n() {
            for t in 0..inst.n() {
                if s == t {
                    continue;
                }
                let Some(d) = graph::distance(inst, s, t, None) else { continue };
                for b in d..=(2 * d).min(d + 4) {
                    let best = simple_paths(inst, s, t, b).into_iter().map(|p| p.2).min();
                    let got = rsp_exact(inst, s, t, b).ok();
                    exact_checked += 1;
                    let ok = match (&best, &got) {
                        (Some(c), Some(p)) => {
                            p.total_cost == *c && p.total_length <= b && is_path(inst, &p.edge_ids, s, t)
                        }
                        (None, None) => true,
                        _ => false,
                    };
                    if !ok {
                        exact_bad.push((gi, s, t, b));
                    }
                }
            }
        }
    }

    let eps = ratio(1, 10);
    let bound = Rat::one() + &eps;
    let mut cases = Vec::new();
    while cases.len() < 100 {
        let inst = &suite[rng.gen_range(0..suite.len())];
        let s = rng.gen_range(0..inst.n());
        let t = rng.gen_range(0..inst.n());
        if s == t {
            continue;
        }
        if let Some(d) = graph::distance(inst, s, t, None) {
            cases.push((inst, s, t, d + rng.gen_range(0..=d)));
        }
    }
    let mut fptas_bad = 0;
    for &(inst, s, t, b) in &cases {
        let exact = rsp_exact(inst, s, t, b).unwrap();
        let p = rsp_fptas(inst, s, t, b, &eps).unwrap();
        if p.total_length > b || p.total_cost > &exact.total_cost * &bound || !is_path(inst, &p.edge_ids, s, t) {
            fptas_bad += 1;
        }
    }

    let mut rcsp_bad = 0;
    for &(inst, s, t, b) in &cases {
        let prices: Vec<Rat> = (0..inst.m()).map(|_| int(rng.gen_range(0..6))).collect();
        let paths = simple_paths(inst, s, t, b);
        let priced: Vec<(Rat, Rat)> = paths
            .iter()
            .map(|(p, _, c)| (p.iter().map(|&e| prices[e].clone()).sum(), c.clone()))
            .collect();
        let z = priced[rng.gen_range(0..priced.len())].0.clone();
        let best = priced.iter().filter(|(pr, _)| *pr <= z).map(|(_, c)| c).min().unwrap();
        match rcsp_price(inst, s, t, b, &prices, &z, &eps) {
            Ok(p) => {
                let price: Rat = p.edge_ids.iter().map(|&e| prices[e].clone()).sum();
                if p.total_length > b || price > &z * &bound || p.total_cost > *best || !is_path(inst, &p.edge_ids, s, t) {
                    rcsp_bad += 1;
                }
            }
            Err(_) => rcsp_bad += 1,
        }
    }
    verdict(
        exact_bad.is_empty() && fptas_bad == 0 && rcsp_bad == 0,
        format!(
            "rsp_exact {} queries on {} graphs, {} mismatches {:?}; fptas 100 cases, {fptas_bad} violations; rcsp 100 cases, {rcsp_bad} violations",
            exact_checked,
            suite.len(),
            exact_bad.len(),
            exact_bad.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn c4_lp_envelope() -> Verdict {
    let budget = OracleBudget::default();
    let eps = ratio(1, 10);
    let hi = ratio(11, 10);
    let mut compared = 0;
    let mut both_infeasible = 0;
    let mut one_sided = 0;
    let mut env_bad = Vec::new();
    let mut opt_compared = 0;
    let mut opt_bad = Vec::new();
    let mut ratios = Vec::new();
    for (i, inst) in oracle_suite(50, 4).iter().enumerate() {
        let opt = exact_opt(inst, &budget).unwrap().total_cost;
        let all: Vec<DemandId> = (0..inst.k()).collect();
        for tau in tau_schedule(inst).values {
            let l = cost_budget(inst.n(), &tau);
            let ours = solve_thin_lp(inst, &all, &l, &eps);
            let exact = exact_lp3(inst, &all, &l, &budget);
            match (ours, exact) {
                (Ok(f), Ok(e)) => {
                    compared += 1;
                    ratios.push(ratio_f64(&f.objective, &e.value));
                    if f.objective > &e.value * &hi || &f.objective * &hi < e.value {
                        env_bad.push(format!("#{i} tau={} lp={} exact={}", fmt_rat(&tau), fmt_rat(&f.objective), fmt_rat(&e.value)));
                    }
                    if tau >= opt {
                        opt_compared += 1;
                        if f.objective > &opt * &hi {
                            opt_bad.push(format!("#{i} tau={}", fmt_rat(&tau)));
                        }
                    }
                }
                (Err(_), Err(_)) => both_infeasible += 1,
                _ => one_sided += 1,
            }
        }
    }
    verdict(
        env_bad.is_empty() && opt_bad.is_empty() && compared > 0 && opt_compared > 0,
        format!(
            "{compared} (instance, tau) pairs compared, objective/exact [{}], {} outside [1/1.1, 1.1] {:?}; \
             {opt_compared} at tau >= OPT, {} above 1.1 OPT; {both_infeasible} infeasible for both, {one_sided} feasible only with the relaxed budget",
            summary(ratios),
            env_bad.len(),
            env_bad.iter().take(3).collect::<Vec<_>>(),
            opt_bad.len()
        ),
    )
}

fn c5_rounding() -> Verdict {
    let n = 16;
    let factor = thin_factor(n);
    let threshold = 1.0 / factor;
    // x values: exactly the threshold (as a rational just above it), well
    // above it, zero, and two interior values.
    let at = wspanner::rational::snap_f64(threshold * (1.0 + 1e-9));
    let xs = vec![at, ratio(1, 2), Rat::one(), Rat::zero(), wspanner::rational::snap_f64(0.3 * threshold), wspanner::rational::snap_f64(0.75 * threshold)];
    let trials = 2000;
    let mut counts = vec![0usize; xs.len()];
    for seed in 0..trials {
        for e in round_thin(&xs, n, seed) {
            counts[e] += 1;
        }
    }
    let certain_ok = counts[..3].iter().all(|&c| c == trials as usize) && counts[3] == 0;
    let mut interior = Vec::new();
    let mut interior_ok = true;
    for e in 4..xs.len() {
        let p = inclusion_probability(&xs[e], factor);
        let freq = counts[e] as f64 / trials as f64;
        interior_ok &= (freq - p).abs() <= 0.05;
        interior.push(format!("p={p:.3} freq={freq:.3}"));
    }
    verdict(
        certain_ok && interior_ok,
        format!(
            "n={n}, threshold x >= {threshold:.5}: above-threshold edges included {:?}/{trials}; zero edge {}; interior {}",
            &counts[..3],
            counts[3],
            interior.join(", ")
        ),
    )
}

/// Instances for the junction-tree bounds: in budget, k in {2, 3, 4}.
fn jt_instances() -> Vec<Instance> {
    oracle_suite(200, 6).into_iter().filter(|g| (2..=4).contains(&g.k())).take(30).collect()
}

fn c6_density_bound() -> Verdict {
    let budget = OracleBudget::default();
    let insts = jt_instances();
    let mut bad = Vec::new();
    let mut slack = Vec::new();
    for (i, inst) in insts.iter().enumerate() {
        let opt = exact_opt(inst, &budget).unwrap().total_cost;
        let jt = exact_min_density_jt(inst, &(0..inst.k()).collect::<Vec<_>>(), &budget).unwrap();
        let k = Rat::from_integer(inst.k().into());
        // density <= OPT / sqrt(k)  <=>  density^2 * k <= OPT^2
        if &jt.density * &jt.density * &k > &opt * &opt {
            bad.push(i);
        }
        if !opt.is_zero() {
            slack.push(to_f64(&jt.density) * (inst.k() as f64).sqrt() / to_f64(&opt));
        }
    }
    verdict(
        insts.len() == 30 && bad.is_empty(),
        format!("{} instances, violations {:?}, density*sqrt(k)/OPT [{}]", insts.len(), bad, summary(slack)),
    )
}

fn c7_greedy_bound() -> Verdict {
    let budget = OracleBudget::default();
    let insts = jt_instances();
    let mut bad = Vec::new();
    let mut corrected_bad = Vec::new();
    let mut ratios = Vec::new();
    for (i, inst) in insts.iter().enumerate() {
        let opt = exact_opt(inst, &budget).unwrap().total_cost;
        let cover = greedy_jt_cover(inst, &(0..inst.k()).collect::<Vec<_>>(), Backend::Exact).unwrap();
        let k = inst.k() as i64;
        if opt.is_zero() {
            if !cover.total_cost.is_zero() {
                bad.push(i);
            }
            continue;
        }
        // cost <= 2 OPT (sqrt(k+1) - 1)  <=>  (cost / (2 OPT) + 1)^2 <= k + 1
        let q = &cover.total_cost / (int(2) * &opt) + Rat::one();
        if &q * &q > int(k + 1) {
            bad.push(i);
        }
        // cost <= OPT (2 sqrt(k) - 1)  <=>  ((cost / OPT + 1) / 2)^2 <= k
        let r = (&cover.total_cost / &opt + Rat::one()) / int(2);
        if &r * &r > int(k) {
            corrected_bad.push(i);
        }
        ratios.push(to_f64(&(&cover.total_cost / &opt)));
    }
    verdict(
        insts.len() == 30 && bad.is_empty(),
        format!(
            "{} instances, cost/OPT [{}]; violations of 2 OPT (sqrt(k+1) - 1): {:?}; violations of OPT (2 sqrt(k) - 1): {:?}",
            insts.len(),
            summary(ratios),
            bad,
            corrected_bad
        ),
    )
}

/// Walks from `a` to `b` with exactly `len` edges that touch `avoid` at most
/// as their final vertex.
fn walks(inst: &Instance, a: VertexId, b: VertexId, len: u64, avoid: VertexId) -> u64 {
    if len == 0 {
        return u64::from(a == b);
    }
    let mut total = 0;
    for &e in inst.out_edges(a) {
        let h = inst.edge(e).head;
        if h != avoid || (h == b && len == 1) {
            total += walks(inst, h, b, len - 1, avoid);
        }
    }
    total
}

fn dag_paths(g: &LayeredGraph, a: usize, b: usize, memo: &mut Vec<Option<u64>>) -> u64 {
    if a == b {
        return 1;
    }
    if let Some(v) = memo[a] {
        return v;
    }
    let next: Vec<usize> = g.out_arcs(a).map(|arc| arc.to).collect();
    let v = next.into_iter().map(|to| dag_paths(g, to, b, memo)).sum();
    memo[a] = Some(v);
    v
}

fn c8_layered() -> Verdict {
    let mut fixtures = Vec::new();
    for (n, pool) in [
        (4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (1, 3), (2, 0), (0, 2)]),
        (5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4), (3, 1)]),
    ] {
        for bits in 0u32..(1 << pool.len()) {
            let edges: Vec<Edge> = pool
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &(a, b))| Edge { tail: a, head: b, cost: int(1), length: 1 })
                .collect();
            fixtures.push(Instance::graph(n, edges).unwrap());
        }
    }
    let mut checked = 0u64;
    let mut bad = 0u64;
    let mut core_bad = 0;
    for g in &fixtures {
        let n = g.n();
        let mut demands = Vec::new();
        for s in 0..n {
            for t in 0..n {
                if s != t {
                    for bound in [2, 4] {
                        demands.push(Demand { source: s, sink: t, bound });
                    }
                }
            }
        }
        for r in 0..n {
            let lg = build_layered_graph(g, r, &demands);
            if lg.core_count != 2 * (n - 1) * (n - 1) + 1 {
                core_bad += 1;
            }
            let root = lg.index_of(LayerVertex::Core(r, 0)).unwrap();
            let mut into_root = vec![None; lg.vertices.len()];
            for (id, d) in demands.iter().enumerate() {
                let lens = |v: VertexId| if v == r { vec![0] } else { (1..n as u64).collect::<Vec<_>>() };
                let mut in_g = 0;
                for i in lens(d.source) {
                    for j in lens(d.sink) {
                        if i + j <= d.bound {
                            in_g += walks(g, d.source, r, i, r) * walks(g, r, d.sink, j, r);
                        }
                    }
                }
                let mut in_layers = 0;
                for &(a, b) in &lg.relations[&id] {
                    let mut from_root = vec![None; lg.vertices.len()];
                    in_layers += dag_paths(&lg, a, root, &mut into_root) * dag_paths(&lg, root, b, &mut from_root);
                }
                checked += 1;
                if in_g != in_layers {
                    bad += 1;
                }
            }
        }
    }
    verdict(
        bad == 0 && core_bad == 0,
        format!(
            "{} fixtures, {checked} (root, demand) counts compared, {bad} mismatches, {core_bad} wrong core sizes",
            fixtures.len()
        ),
    )
}

fn c9_expansion() -> Verdict {
    let mut bad = Vec::new();
    for seed in 0..20u64 {
        let params = GenParams {
            n: 5 + (seed as usize % 5),
            edge_probability: 0.35,
            max_length: 5,
            ..GenParams::default()
        };
        let inst = gen_random_instance(&params, 900 + seed).unwrap();
        let x = unit_length_expand(&inst);
        let orig = graph::all_pairs(&inst, None);
        let expanded = graph::all_pairs(&x.graph, None);
        let same_dist = (0..inst.n()).all(|s| (0..inst.n()).all(|t| orig[s][t] == expanded[s][t]));
        let unit = x.graph.edges().iter().all(|e| e.length == 1);
        if x.graph.total_cost() != inst.total_cost() || !same_dist || !unit {
            bad.push(seed);
        }
    }
    verdict(bad.is_empty(), format!("20 instances, failures {bad:?}"))
}

/// Fixture for the preserver rounding check: a 4x4 grid whose covering LP
/// over the pairs at distance at least 4 is half-integral.
fn grid_fixture() -> Instance {
    let w = 4;
    let id = |x: usize, y: usize| y * w + x;
    let mut text = String::new();
    let mut m = 0;
    for y in 0..w {
        for x in 0..w {
            if x + 1 < w {
                text.push_str(&format!("e {} {} {} 1\n", id(x, y), id(x + 1, y), 1 + (x + 2 * y) % 3));
                m += 1;
            }
            if y + 1 < w {
                text.push_str(&format!("e {} {} {} 1\n", id(x, y), id(x, y + 1), 1 + (2 * x + y) % 3));
                m += 1;
            }
        }
    }
    let g = parse_instance(&format!("graph {} {m}\n{text}", w * w)).unwrap();
    let far = preserver_instance(&g).demands().iter().filter(|d| d.bound >= 4).copied().collect();
    g.with_demands(far).unwrap()
}

fn c10_preserver() -> Verdict {
    let mut bad = Vec::new();
    let graphs: Vec<Instance> = tiny_suite(200, 10).into_iter().filter(|g| g.n() <= 8).collect();
    for (i, g) in graphs.iter().enumerate() {
        let run = solve_allpair_preserver(g, &cfg(i as u64)).unwrap();
        let full = graph::all_pairs(g, None);
        let kept = graph::all_pairs(g, Some(&graph::mask_of(g.m(), &run.solution.edge_ids)));
        if full != kept {
            bad.push(i);
        }
    }
    // Statistical settling check: round the covering LP over the far pairs of the grid.
    let inst = grid_fixture();
    let pairs: Vec<DemandId> = (0..inst.k()).collect();
    let lp = solve_preserver_lp(&inst, &pairs);
    let fractional = lp.x.iter().filter(|v| !v.is_zero() && !v.is_one()).count();
    let factor = wspanner::lp::preserver_factor(inst.n());
    let interior = lp.x.iter().filter(|v| (0.0..1.0).contains(&inclusion_probability(v, factor)) && !v.is_zero()).count();
    let runs = 200;
    let settled = (0..runs).filter(|&s| feasible(&inst, &round_preserver(&lp.x, inst.n(), 10_000 + s))).count();
    verdict(
        bad.is_empty() && settled * 100 >= 95 * runs as usize,
        format!(
            "{} graphs with n <= 8, distance mismatches {:?}; grid fixture ({} pairs, {fractional} fractional x, {interior} with inclusion probability below 1): {settled}/{runs} roundings settle every pair",
            graphs.len(),
            bad,
            inst.k()
        ),
    )
}

fn funnel() -> Instance {
    parse_instance("graph 6 6\ne 0 1 1 1\ne 1 5 1 1\ne 0 2 50 1\ne 2 3 50 1\ne 3 5 50 1\ne 4 1 1 1\ndemands 1\nd 0 5 3\n").unwrap()
}

fn c11_hitting_set() -> Verdict {
    let inst = funnel();
    let tau = int(10);
    let eps = ratio(1, 10);
    let thick: BTreeSet<DemandId> = [0].into();
    let runs = 200u64;
    let hit = (0..runs)
        .filter(|&s| {
            let out = resolve_thick(&inst, &thick, &tau, &eps, s);
            feasible(&inst, &out.edges)
        })
        .count();
    verdict(
        hit * 100 >= 95 * runs as usize,
        format!("funnel fixture at tau = 10: {hit}/{runs} seeded runs resolve the thick pair"),
    )
}

fn c12_online() -> Verdict {
    let mut bad = Vec::new();
    for (i, inst) in tiny_suite(200, 1).iter().enumerate() {
        let run = online_solve(inst, inst.demands(), &cfg(i as u64)).unwrap();
        let monotone = run.state.history.windows(2).all(|w| w[0].is_subset(&w[1]));
        let prefix_ok = run.state.history.iter().enumerate().all(|(j, bought)| {
            let seen = inst.with_demands(inst.demands()[..=j].to_vec()).unwrap();
            feasible(&seen, bought)
        });
        if !monotone || !prefix_ok {
            bad.push(i);
        }
    }
    let chain = parse_instance("graph 4 3\ne 0 1 1 1\ne 1 2 2 1\ne 2 3 3 1\n").unwrap();
    let long = Demand { source: 0, sink: 3, bound: 3 };
    let short = Demand { source: 1, sink: 2, bound: 1 };
    let a = online_solve(&chain, &[long, short], &cfg(0)).unwrap().solution.total_cost;
    let b = online_solve(&chain, &[short, long], &cfg(0)).unwrap().solution.total_cost;
    verdict(
        bad.is_empty() && a == b,
        format!(
            "200 instances, non-monotone or unresolved prefixes {:?}; chain fixture costs {} and {}",
            bad,
            fmt_rat(&a),
            fmt_rat(&b)
        ),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    // Only run under `cargo test`, honoring a name filter if given.
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let criteria: [Criterion; 12] = [
        ("1 feasibility", c1_feasibility),
        ("2 oracle ratio", c2_oracle_ratio),
        ("3 constrained paths", c3_constrained_paths),
        ("4 LP envelope", c4_lp_envelope),
        ("5 rounding", c5_rounding),
        ("6 density bound", c6_density_bound),
        ("7 greedy cover bound", c7_greedy_bound),
        ("8 layered bijection", c8_layered),
        ("9 unit-length expansion", c9_expansion),
        ("10 preserver equality", c10_preserver),
        ("11 hitting set", c11_hitting_set),
        ("12 online", c12_online),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        if filter.as_deref().is_some_and(|f| !name.contains(f)) {
            continue;
        }
        let start = Instant::now();
        let v = run();
        println!(
            "criterion {name}: {} ({:.1}s) {}",
            if v.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            v.detail
        );
        failed += usize::from(!v.pass);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
