//! Python bindings. Instances and solutions cross the boundary as text in
//! the CLI formats; costs come back as exact `p/q` strings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use wspanner::generate::{gen_random_instance, GenParams};
use wspanner::instance::{parse_arrivals, parse_instance, Instance};
use wspanner::junction::Backend;
use wspanner::oracle::{exact_opt, OracleBudget};
use wspanner::pipeline::{
    online_solve, preserver_instance, solve_allpair_preserver, solve_pairwise, solve_single_source, PipelineConfig,
};
use wspanner::rational::{fmt_rat, parse_rat};
use wspanner::solution::{parse_solution, verify_solution, write_solution, Solution};

/// Result of a solver run.
#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub edges: Vec<usize>,
    pub cost: String,
    /// Solution report in the CLI format.
    pub solution: String,
    pub manifest: String,
}

#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Debug, Clone)]
pub struct VerifyResult {
    pub cost: String,
    pub attained: Vec<Option<u64>>,
    pub resolved: Vec<bool>,
}

#[pymethods]
impl VerifyResult {
    fn all_resolved(&self) -> bool {
        self.resolved.iter().all(|&r| r)
    }
}

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn load(text: &str) -> PyResult<Instance> {
    parse_instance(text).map_err(value_error)
}

pub fn solve_text(text: &str, mode: &str, eps: &str, seed: u64, backend: &str, arrivals: Option<&str>) -> Result<SolveResult, String> {
    let inst = parse_instance(text).map_err(|e| e.to_string())?;
    let eps = parse_rat(eps).map_err(|e| e.to_string())?;
    if eps <= Default::default() {
        return Err("eps must be positive".into());
    }
    let cfg = PipelineConfig {
        eps,
        seed,
        backend: backend.parse::<Backend>().map_err(|e| e.to_string())?,
        ..PipelineConfig::default()
    };
    let (inst, sol, manifest) = match mode {
        "pairwise" => {
            let run = solve_pairwise(&inst, &cfg);
            (inst, run.solution, run.manifest)
        }
        "single-source" => {
            let run = solve_single_source(&inst, &cfg).map_err(|e| e.to_string())?;
            (inst, run.solution, run.manifest)
        }
        "allpair-preserver" => {
            let run = solve_allpair_preserver(&inst, &cfg).map_err(|e| e.to_string())?;
            (preserver_instance(&inst), run.solution, run.manifest)
        }
        "online" => {
            let order = match arrivals {
                Some(a) => parse_arrivals(a).map_err(|e| e.to_string())?,
                None => inst.demands().to_vec(),
            };
            let run = online_solve(&inst, &order, &cfg).map_err(|e| e.to_string())?;
            (run.instance, run.solution, run.manifest)
        }
        other => return Err(format!("unknown mode `{other}`")),
    };
    Ok(SolveResult {
        edges: sol.edge_ids.iter().copied().collect(),
        cost: fmt_rat(&sol.total_cost),
        solution: write_solution(&inst, &sol),
        manifest: manifest.render(),
    })
}

/// Solves an instance given as text. `mode` is one of `pairwise`,
/// `allpair-preserver`, `single-source`, `online`.
#[pyfunction]
#[pyo3(signature = (text, mode = "pairwise", eps = "0.1", seed = 0, backend = "greedy", arrivals = None))]
fn solve(
    py: Python<'_>,
    text: &str,
    mode: &str,
    eps: &str,
    seed: u64,
    backend: &str,
    arrivals: Option<&str>,
) -> PyResult<SolveResult> {
    py.detach(|| solve_text(text, mode, eps, seed, backend, arrivals)).map_err(PyValueError::new_err)
}

#[pyfunction]
fn verify(instance: &str, solution: &str) -> PyResult<VerifyResult> {
    let inst = load(instance)?;
    let sol = parse_solution(&inst, solution).map_err(value_error)?;
    let report = verify_solution(&inst, &sol);
    Ok(VerifyResult {
        cost: fmt_rat(&report.total_cost),
        attained: report.attained,
        resolved: report.resolved,
    })
}

/// Seeded random instance as text.
#[pyfunction]
#[pyo3(signature = (n, seed = 0, edge_probability = 0.3, demands = 3, slack = 1.5, max_length = 5))]
fn generate(n: usize, seed: u64, edge_probability: f64, demands: usize, slack: f64, max_length: u64) -> PyResult<String> {
    let params = GenParams {
        n,
        edge_probability,
        demands,
        slack,
        max_length,
        ..GenParams::default()
    };
    gen_random_instance(&params, seed).map(|i| i.to_text()).map_err(value_error)
}

/// Exact optimum `(cost, edges)` by subset enumeration.
#[pyfunction]
fn optimum(py: Python<'_>, text: &str) -> PyResult<(String, Vec<usize>)> {
    let inst = load(text)?;
    let sol: Solution = py
        .detach(|| exact_opt(&inst, &OracleBudget::default()))
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok((fmt_rat(&sol.total_cost), sol.edge_ids.into_iter().collect()))
}

#[pymodule]
fn wspanner_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<SolveResult>()?;
    m.add_class::<VerifyResult>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(optimum, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN: &str = "graph 3 2\ne 0 1 1 1\ne 1 2 2 1\ndemands 1\nd 0 2 2\n";

    #[test]
    fn every_mode_solves_the_chain() {
        for mode in ["pairwise", "allpair-preserver", "single-source", "online"] {
            let r = solve_text(CHAIN, mode, "0.1", 0, "greedy", None).unwrap();
            assert_eq!(r.edges, vec![0, 1], "{mode}");
        }
    }

    #[test]
    fn bad_arguments_are_errors() {
        assert!(solve_text(CHAIN, "nope", "0.1", 0, "greedy", None).is_err());
        assert!(solve_text(CHAIN, "pairwise", "0", 0, "greedy", None).is_err());
        assert!(solve_text("graph x", "pairwise", "0.1", 0, "greedy", None).is_err());
    }
}
