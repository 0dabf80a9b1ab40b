//! Run execution: domain construction, algorithm dispatch and timing.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use search_core::{lds, ns, ProblemState, SearchLimits, SearchResult};

use crate::report::{BenchReport, ReportRow};
use crate::spec::{Algo, Problem, RunSpec, VarFlag};

/// Environment variable supplying the default wall-clock limit (seconds)
/// for runs that do not set one explicitly.
pub const TIMEOUT_ENV_VAR: &str = "NSLDS_TIMEOUT_SECONDS";

/// Execute one run. Failures (unresolvable instance, parse error, invalid
/// flags) come back as an error row rather than panicking, so suites can
/// continue past them.
pub fn run(spec: &RunSpec) -> ReportRow {
    run_with_solution(spec).0
}

/// As [`run`], also returning a human-readable rendering of the best state
/// when the domain has one.
pub fn run_with_solution(spec: &RunSpec) -> (ReportRow, Option<String>) {
    match run_inner(spec) {
        Ok(output) => output,
        Err(message) => (error_row(spec, message), None),
    }
}

/// Execute `specs` in order, using up to `parallelism` worker threads.
/// Rows land in spec order regardless of completion order; failed specs
/// become error rows and the suite continues.
pub fn run_suite(specs: &[RunSpec], parallelism: usize) -> BenchReport {
    let workers = parallelism.max(1).min(specs.len().max(1));
    if workers <= 1 {
        return BenchReport { rows: specs.iter().map(run).collect() };
    }
    let next = AtomicUsize::new(0);
    let rows: Mutex<Vec<Option<ReportRow>>> = Mutex::new(vec![None; specs.len()]);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                if index >= specs.len() {
                    break;
                }
                let row = run(&specs[index]);
                rows.lock().expect("report sink poisoned")[index] = Some(row);
            });
        }
    });
    let rows = rows
        .into_inner()
        .expect("report sink poisoned")
        .into_iter()
        .map(|row| row.expect("every spec produces a row"))
        .collect();
    BenchReport { rows }
}

fn error_row(spec: &RunSpec, message: String) -> ReportRow {
    ReportRow {
        instance: spec.instance_label(),
        algo: spec.algo.to_string(),
        level: spec.level,
        var: None,
        sym: None,
        mac: None,
        score: None,
        solved: None,
        seconds: 0.0,
        playout_steps: None,
        terminated_by: "error".into(),
        error: Some(message),
    }
}

fn resolve_limits(spec: &RunSpec) -> Result<SearchLimits, String> {
    let mut limits = SearchLimits::unlimited();
    match spec.max_seconds {
        Some(seconds) => limits.max_seconds = seconds,
        None => {
            if let Ok(value) = std::env::var(TIMEOUT_ENV_VAR) {
                let seconds: f64 = value
                    .parse()
                    .map_err(|_| format!("{TIMEOUT_ENV_VAR} is not a number: {value:?}"))?;
                if !(seconds >= 0.0) {
                    return Err(format!("{TIMEOUT_ENV_VAR} must be non-negative, got {value}"));
                }
                limits.max_seconds = seconds;
            }
        }
    }
    if let Some(budget) = spec.step_budget {
        limits.step_budget = budget;
    }
    Ok(limits)
}

fn run_inner(spec: &RunSpec) -> Result<(ReportRow, Option<String>), String> {
    spec.validate()?;
    let limits = resolve_limits(spec)?;
    match spec.problem {
        Problem::Tree => {
            let root = search_core::tree::make_figure_tree();
            Ok(execute(spec, &root, &limits, |result| {
                Some(format!("path {:?}", result.best_state.path()))
            }))
        }
        Problem::Snake => {
            let dimension = spec.dimension.expect("validated");
            let root = match &spec.start_path {
                Some(text) => {
                    let path = parse_start_path(text)?;
                    snake::SnakeState::from_start_path(dimension, &path)
                        .map_err(|e| e.to_string())?
                }
                None => snake::SnakeState::new(dimension).map_err(|e| e.to_string())?,
            };
            Ok(execute(spec, &root, &limits, |result| {
                let vertices: Vec<String> =
                    result.best_state.path().iter().map(u32::to_string).collect();
                Some(format!("snake {}", vertices.join(",")))
            }))
        }
        Problem::Latin => {
            let order = spec.order.expect("validated");
            let config = latin::LatinConfig::new(order)
                .with_var(spec.var.unwrap_or(VarFlag::Deg).into())
                .with_symmetry(spec.sym.unwrap_or(false))
                .with_mac(spec.mac.unwrap_or(false));
            let root = latin::LatinState::root(Arc::new(config));
            Ok(execute(spec, &root, &limits, |result| {
                result
                    .best_state
                    .grids()
                    .map(|(a, b)| latin::format_pair_square(&a, &b))
            }))
        }
        Problem::Tsptw => {
            let path = spec.instance.as_deref().expect("validated");
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {path}: {e}"))?;
            let instance = tsptw::load_tsptw(&text).map_err(|e| format!("{path}: {e}"))?;
            let root = tsptw::TsptwState::new(Arc::new(instance));
            Ok(execute(spec, &root, &limits, |result| {
                let tour: Vec<String> =
                    result.global_best_state.visited().iter().map(u16::to_string).collect();
                Some(format!(
                    "tour {} -> 0 (distance {:.2}, violations {})",
                    tour.join(" -> "),
                    result.global_best_state.distance(),
                    result.global_best_state.violations()
                ))
            }))
        }
        Problem::Rna => {
            let path = spec.instance.as_deref().expect("validated");
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {path}: {e}"))?;
            let puzzles = rna::load_puzzle_file(&text).map_err(|e| format!("{path}: {e}"))?;
            let puzzle = match &spec.name {
                Some(name) => puzzles
                    .into_iter()
                    .find(|p| p.name() == name)
                    .ok_or_else(|| format!("no puzzle named {name:?} in {path}"))?,
                None => puzzles.into_iter().next().ok_or_else(|| format!("{path} is empty"))?,
            };
            let root = rna::RnaState::new(Arc::new(puzzle));
            Ok(execute(spec, &root, &limits, |result| {
                result.best_state.sequence().map(|seq| format!("sequence {seq}"))
            }))
        }
    }
}

fn parse_start_path(text: &str) -> Result<Vec<u32>, String> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| format!("invalid vertex {part:?} in start path"))
        })
        .collect()
}

fn execute<S, F>(
    spec: &RunSpec,
    root: &S,
    limits: &SearchLimits,
    render: F,
) -> (ReportRow, Option<String>)
where
    S: ProblemState,
    F: Fn(&SearchResult<S>) -> Option<String>,
{
    let start = Instant::now();
    let result = match spec.algo {
        Algo::Lds => lds(root, spec.level, limits),
        Algo::Ns => ns(root, spec.level, limits),
    };
    let seconds = start.elapsed().as_secs_f64();
    let is_latin = spec.problem == Problem::Latin;
    let row = ReportRow {
        instance: spec.instance_label(),
        algo: spec.algo.to_string(),
        level: spec.level,
        var: is_latin.then(|| spec.var.unwrap_or(VarFlag::Deg).to_string()),
        sym: is_latin.then(|| spec.sym.unwrap_or(false)),
        mac: is_latin.then(|| spec.mac.unwrap_or(false)),
        score: Some(result.best_score),
        solved: Some(result.solved),
        seconds,
        playout_steps: Some(result.stats.playout_steps),
        terminated_by: result.terminated_by.to_string(),
        error: None,
    };
    let solution = render(&result);
    (row, solution)
}
