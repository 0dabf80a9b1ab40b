//! Benchmark harness: run specifications, execution, and report emission.
//!
//! A [`RunSpec`] names a problem instance, an algorithm and a level plus
//! per-run limits; [`run`] executes one and yields a [`ReportRow`];
//! [`run_suite`] executes a list (optionally across threads) and collects a
//! [`BenchReport`] whose row order follows the spec order. Reports render
//! as CSV, JSON or an aligned text table via [`emit`].

mod report;
mod runner;
mod spec;

pub use report::{emit, format_score, BenchReport, OutputFormat, ReportRow, CSV_HEADER};
pub use runner::{run, run_suite, run_with_solution, TIMEOUT_ENV_VAR};
pub use spec::{Algo, Problem, RunSpec, VarFlag, MAX_LEVEL};
