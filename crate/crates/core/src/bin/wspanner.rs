use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};
use wspanner::generate::{gen_random_instance, oracle_suite, tiny_suite, GenError, GenParams};
use wspanner::instance::{parse_arrivals, parse_instance, Instance, InstanceError};
use wspanner::junction::Backend;
use wspanner::oracle::{exact_opt, OracleBudget, OracleError};
use wspanner::paths::{rcsp_price, rsp_exact, rsp_fptas};
use wspanner::pipeline::{
    online_solve, solve_allpair_preserver, solve_pairwise, solve_single_source, Manifest, PipelineConfig,
    PipelineError, Run,
};
use wspanner::rational::{fmt_rat, parse_rat, to_f64, Rat};
use wspanner::solution::{parse_solution, verify_solution, write_solution, Solution};

const EXIT_INFEASIBLE_SOLUTION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INVALID_INSTANCE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;
const EXIT_BUDGET: u8 = 5;

/// Minimum-cost weighted spanners and distance preservers on directed graphs.
#[derive(Parser)]
#[command(name = "wspanner", version)]
struct Cli {
    /// Worker threads for the internal parallel loops.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and write the solution plus a run manifest.
    Solve(SolveArgs),
    /// Check a solution against an instance; exit 1 if any demand is broken.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Write a seeded random instance.
    Gen(GenArgs),
    /// Exact optimum by subset enumeration, optionally compared to a solution.
    Oracle(OracleArgs),
    /// Run every solver over a seeded suite and print a CSV table.
    Bench(BenchArgs),
    /// Restricted shortest path between two vertices.
    Rsp(RspArgs),
    /// Cheapest path under a length budget and a price budget.
    Rcsp(RcspArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Pairwise,
    AllpairPreserver,
    SingleSource,
    Online,
}

#[derive(Args)]
struct SolveArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "pairwise")]
    mode: Mode,
    #[arg(long, default_value = "0.1", value_parser = parse_eps)]
    eps: Rat,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "greedy")]
    backend: Backend,
    /// Arrival order for online mode; defaults to the instance's demands.
    #[arg(long)]
    arrivals: Option<PathBuf>,
    /// Solution file; stdout when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Manifest file, appended to; defaults to `<out>.manifest`.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.3)]
    edge_probability: f64,
    #[arg(long, default_value_t = 1)]
    cost_min: u64,
    #[arg(long, default_value_t = 10)]
    cost_max: u64,
    #[arg(long, default_value_t = 5)]
    max_length: u64,
    #[arg(long, default_value_t = 3)]
    demands: usize,
    #[arg(long, default_value_t = 1.5)]
    slack: f64,
    #[arg(long)]
    max_edges: Option<usize>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = 14)]
    max_edges: usize,
    #[arg(long, default_value_t = 8)]
    max_vertices: usize,
    /// Seconds per oracle call.
    #[arg(long, default_value_t = 60)]
    time_limit: u64,
}

impl BudgetArgs {
    fn budget(&self) -> OracleBudget {
        OracleBudget {
            max_edges: self.max_edges,
            max_vertices: self.max_vertices,
            time_limit: Duration::from_secs(self.time_limit),
            ..OracleBudget::default()
        }
    }
}

#[derive(Args)]
struct OracleArgs {
    instance: PathBuf,
    #[arg(long)]
    against: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Tiny,
    Oracle,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "tiny")]
    suite: Suite,
    #[arg(long, default_value_t = 20)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "0.1", value_parser = parse_eps)]
    eps: Rat,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct RspArgs {
    instance: PathBuf,
    #[arg(long)]
    from: usize,
    #[arg(long)]
    to: usize,
    #[arg(long)]
    bound: u64,
    /// Use the FPTAS with this accuracy instead of the exact DP.
    #[arg(long, value_parser = parse_eps)]
    eps: Option<Rat>,
}

#[derive(Args)]
struct RcspArgs {
    instance: PathBuf,
    #[arg(long)]
    from: usize,
    #[arg(long)]
    to: usize,
    #[arg(long)]
    bound: u64,
    /// One price per edge, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_nonneg)]
    prices: Vec<Rat>,
    #[arg(long, value_parser = parse_nonneg)]
    price_budget: Rat,
    #[arg(long, default_value = "0.1", value_parser = parse_eps)]
    eps: Rat,
}

fn parse_eps(s: &str) -> Result<Rat, String> {
    let r = parse_rat(s).map_err(|e| e.to_string())?;
    if r <= Rat::default() {
        return Err("must be positive".into());
    }
    Ok(r)
}

fn parse_nonneg(s: &str) -> Result<Rat, String> {
    let r = parse_rat(s).map_err(|e| e.to_string())?;
    if r < Rat::default() {
        return Err("must be non-negative".into());
    }
    Ok(r)
}

/// An error carrying its exit code.
struct Failure(u8, String);

type CmdResult = Result<(), Failure>;

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        let code = if e.is_syntax() { EXIT_PARSE } else { EXIT_INVALID_INSTANCE };
        Failure(code, e.to_string())
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        let code = match e {
            PipelineError::Invariant(_) => EXIT_INTERNAL,
            _ => EXIT_INVALID_INSTANCE,
        };
        Failure(code, e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::BudgetExceeded(_) => EXIT_BUDGET,
            _ => EXIT_INVALID_INSTANCE,
        };
        Failure(code, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure(EXIT_INTERNAL, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<(Instance, String), Failure> {
    let text = read(path)?;
    Ok((parse_instance(&text)?, text))
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn cmd_solve(a: SolveArgs) -> CmdResult {
    let (inst, text) = load_instance(&a.input)?;
    let cfg = PipelineConfig {
        eps: a.eps.clone(),
        seed: a.seed,
        backend: a.backend,
        ..PipelineConfig::default()
    };
    let (inst, Run { solution, manifest }) = match a.mode {
        Mode::Pairwise => {
            let run = solve_pairwise(&inst, &cfg);
            (inst, run)
        }
        Mode::SingleSource => {
            let run = solve_single_source(&inst, &cfg)?;
            (inst, run)
        }
        Mode::AllpairPreserver => {
            let run = solve_allpair_preserver(&inst, &cfg)?;
            (wspanner::pipeline::preserver_instance(&inst), run)
        }
        Mode::Online => {
            let arrivals = match &a.arrivals {
                Some(p) => parse_arrivals(&read(p)?)?,
                None => inst.demands().to_vec(),
            };
            let run = online_solve(&inst, &arrivals, &cfg).map_err(|e| match e {
                wspanner::pipeline::OnlineError::Invalid(e) => Failure::from(e),
                wspanner::pipeline::OnlineError::Pipeline(e) => Failure::from(e),
            })?;
            (
                run.instance,
                Run {
                    solution: run.solution,
                    manifest: run.manifest,
                },
            )
        }
    };
    let report = verify_solution(&inst, &solution);
    if !report.all_resolved() {
        return Err(Failure(
            EXIT_INTERNAL,
            format!("solver output leaves demands {:?} unresolved", report.unresolved()),
        ));
    }
    let mut full = Manifest::default();
    full.push("input", a.input.display());
    full.push("input.sha256", sha256_hex(&text));
    full.push("threads", rayon::current_num_threads());
    full.extend(manifest);
    write(a.out.as_deref(), &write_solution(&inst, &solution))?;
    let manifest_path = a
        .manifest
        .clone()
        .or_else(|| a.out.as_ref().map(|o| PathBuf::from(format!("{}.manifest", o.display()))));
    match manifest_path {
        Some(p) => full
            .append_to(&p)
            .map_err(|e| Failure(EXIT_INTERNAL, format!("{}: {e}", p.display())))?,
        None => eprint!("{}", full.render()),
    }
    Ok(())
}

fn cmd_verify(instance: &Path, solution: &Path) -> CmdResult {
    let (inst, _) = load_instance(instance)?;
    let sol = parse_solution(&inst, &read(solution)?)?;
    let report = verify_solution(&inst, &sol);
    println!("cost {}", fmt_rat(&report.total_cost));
    for (i, d) in inst.demands().iter().enumerate() {
        let got = report.attained[i].map_or_else(|| "inf".to_string(), |v| v.to_string());
        let status = if report.resolved[i] { "ok" } else { "BROKEN" };
        println!("demand {i} {}->{} bound {} attained {got} {status}", d.source, d.sink, d.bound);
    }
    if report.all_resolved() {
        Ok(())
    } else {
        Err(Failure(
            EXIT_INFEASIBLE_SOLUTION,
            format!("unresolved demands: {:?}", report.unresolved()),
        ))
    }
}

fn cmd_gen(a: GenArgs) -> CmdResult {
    let params = GenParams {
        n: a.n,
        edge_probability: a.edge_probability,
        cost_range: (a.cost_min, a.cost_max),
        max_length: a.max_length,
        demands: a.demands,
        slack: a.slack,
        max_edges: a.max_edges,
    };
    let inst = gen_random_instance(&params, a.seed).map_err(|e| match e {
        GenError::InvalidParams(_) => Failure(EXIT_PARSE, e.to_string()),
        GenError::RequestedDemandsUnreachable { .. } => Failure(EXIT_INVALID_INSTANCE, e.to_string()),
    })?;
    write(a.out.as_deref(), &inst.to_text())
}

fn ratio_text(cost: &Rat, opt: &Rat) -> String {
    if *opt == Rat::default() {
        if *cost == Rat::default() { "1".into() } else { "inf".into() }
    } else {
        fmt_rat(&(cost / opt))
    }
}

fn cmd_oracle(a: OracleArgs) -> CmdResult {
    let (inst, _) = load_instance(&a.instance)?;
    let opt = exact_opt(&inst, &a.budget.budget())?;
    println!("opt {}", fmt_rat(&opt.total_cost));
    println!("opt.edges {:?}", opt.edge_ids);
    if let Some(p) = &a.against {
        let sol = parse_solution(&inst, &read(p)?)?;
        println!("solution {}", fmt_rat(&sol.total_cost));
        println!("ratio {}", ratio_text(&sol.total_cost, &opt.total_cost));
    }
    Ok(())
}

fn cmd_bench(a: BenchArgs) -> CmdResult {
    let suite = match a.suite {
        Suite::Tiny => tiny_suite(a.count, a.seed),
        Suite::Oracle => oracle_suite(a.count, a.seed),
    };
    let budget = a.budget.budget();
    println!("instance,n,m,k,mode,cost,opt,ratio,millis");
    for (i, inst) in suite.iter().enumerate() {
        let cfg = PipelineConfig {
            eps: a.eps.clone(),
            seed: a.seed.wrapping_add(i as u64),
            ..PipelineConfig::default()
        };
        let opt = if budget.admits(inst) {
            exact_opt(inst, &budget).ok().map(|s| s.total_cost)
        } else {
            None
        };
        let single_source = inst.demands().iter().all(|d| d.source == inst.demands()[0].source);
        let mut rows: Vec<(&str, Result<Solution, Failure>, Duration)> = Vec::new();
        let timed = |f: &dyn Fn() -> Result<Solution, Failure>| {
            let t = Instant::now();
            let r = f();
            (r, t.elapsed())
        };
        let (r, t) = timed(&|| Ok(solve_pairwise(inst, &cfg).solution));
        rows.push(("pairwise", r, t));
        let (r, t) = timed(&|| {
            online_solve(inst, inst.demands(), &cfg)
                .map(|run| run.solution)
                .map_err(|e| Failure(EXIT_INTERNAL, e.to_string()))
        });
        rows.push(("online", r, t));
        if single_source {
            let (r, t) = timed(&|| Ok(solve_single_source(inst, &cfg)?.solution));
            rows.push(("single-source", r, t));
        }
        for (mode, r, t) in rows {
            let sol = r?;
            let (opt_s, ratio) = match &opt {
                Some(o) => (fmt_rat(o), format!("{:.4}", ratio_f64(&sol.total_cost, o))),
                None => ("".into(), "".into()),
            };
            println!(
                "{i},{},{},{},{mode},{},{opt_s},{ratio},{}",
                inst.n(),
                inst.m(),
                inst.k(),
                fmt_rat(&sol.total_cost),
                t.as_millis()
            );
        }
    }
    Ok(())
}

fn ratio_f64(cost: &Rat, opt: &Rat) -> f64 {
    if *opt == Rat::default() {
        if *cost == Rat::default() { 1.0 } else { f64::INFINITY }
    } else {
        to_f64(&(cost / opt))
    }
}

fn check_vertices(inst: &Instance, vs: &[usize]) -> CmdResult {
    match vs.iter().find(|&&v| v >= inst.n()) {
        Some(v) => Err(Failure(EXIT_PARSE, format!("vertex {v} out of range for n = {}", inst.n()))),
        None => Ok(()),
    }
}

fn print_path(p: &wspanner::paths::ConstrainedPath) {
    println!("cost {}", fmt_rat(&p.total_cost));
    println!("length {}", p.total_length);
    if let Some(price) = &p.total_price {
        println!("price {}", fmt_rat(price));
    }
    println!("edges {:?}", p.edge_ids);
}

fn cmd_rsp(a: RspArgs) -> CmdResult {
    let (inst, _) = load_instance(&a.instance)?;
    check_vertices(&inst, &[a.from, a.to])?;
    let p = match &a.eps {
        Some(eps) => rsp_fptas(&inst, a.from, a.to, a.bound, eps),
        None => rsp_exact(&inst, a.from, a.to, a.bound),
    }
    .map_err(|e| Failure(EXIT_INVALID_INSTANCE, e.to_string()))?;
    print_path(&p);
    Ok(())
}

fn cmd_rcsp(a: RcspArgs) -> CmdResult {
    let (inst, _) = load_instance(&a.instance)?;
    check_vertices(&inst, &[a.from, a.to])?;
    if a.prices.len() != inst.m() {
        return Err(Failure(
            EXIT_PARSE,
            format!("expected {} prices, got {}", inst.m(), a.prices.len()),
        ));
    }
    let p = rcsp_price(&inst, a.from, a.to, a.bound, &a.prices, &a.price_budget, &a.eps)
        .map_err(|e| Failure(EXIT_INVALID_INSTANCE, e.to_string()))?;
    print_path(&p);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.threads.max(1)).build();
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INTERNAL);
        }
    };
    let result = pool.install(|| match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Verify { instance, solution } => cmd_verify(&instance, &solution),
        Command::Gen(a) => cmd_gen(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Rsp(a) => cmd_rsp(a),
        Command::Rcsp(a) => cmd_rcsp(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
