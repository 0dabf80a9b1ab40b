//! Anytime heuristic tree search over a pluggable problem interface.
//!
//! The engine provides three searches driven by a domain-supplied move
//! ordering heuristic:
//!
//! * [`playout`] — greedy descent that always plays the first (heuristic-best)
//!   move until a terminal state is reached.
//! * [`lds`] — limited discrepancy search: explores exactly the root-to-leaf
//!   paths that deviate from the first move at most `level` times.
//! * [`ns`] — nested search: at each step evaluates every legal move by a
//!   level `n-1` completion and commits to the move whose completion scored
//!   best, repeating until terminal.
//!
//! Domains implement [`ProblemState`]; the engine itself carries no
//! randomness, so identical inputs always produce identical results. The
//! [`analysis`] module evaluates the closed-form step-count recurrences for
//! both searches on uniform trees, and [`tree`] provides synthetic tree
//! fixtures used to validate them.

pub mod analysis;
mod engine;
mod problem;
pub mod tree;

pub use engine::{lds, lds_with_observer, ns, ns_with_observer, playout};
pub use problem::ProblemState;

/// Cooperative resource limits for a single search invocation.
///
/// A value of zero means "unlimited" for both fields. Limits are checked at
/// every node expansion and every playout step; when a limit expires the
/// search unwinds and returns the best terminal state seen so far.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchLimits {
    /// Wall-clock budget in seconds (0 = unlimited). Must be non-negative.
    pub max_seconds: f64,
    /// Maximum number of playout steps (0 = unlimited).
    pub step_budget: u64,
}

impl SearchLimits {
    pub fn unlimited() -> Self {
        SearchLimits { max_seconds: 0.0, step_budget: 0 }
    }

    pub fn with_max_seconds(seconds: f64) -> Self {
        SearchLimits { max_seconds: seconds, step_budget: 0 }
    }

    pub fn with_step_budget(steps: u64) -> Self {
        SearchLimits { max_seconds: 0.0, step_budget: steps }
    }
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self::unlimited()
    }
}

/// Instrumentation counters accumulated over one search run.
///
/// `playout_steps` counts moves played at level 0, i.e. inside playouts and
/// inside the playout-like tail of a discrepancy branch; moves played while
/// choosing among children at level ≥ 1 are not playout steps. This is the
/// quantity the step-count recurrences in [`analysis`] model. All counters
/// are monotone non-decreasing during a run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SearchStats {
    /// Moves played at level 0.
    pub playout_steps: u64,
    /// Number of level-0 descents begun (a descent from an already terminal
    /// state still counts as one playout of zero steps).
    pub playouts: u64,
    /// Non-terminal nodes whose moves were enumerated at level ≥ 1.
    pub nodes_expanded: u64,
    /// `(playout_steps, score)` recorded each time the best terminal score
    /// seen so far improves.
    pub best_score_trace: Vec<(u64, f64)>,
}

impl SearchStats {
    /// Best terminal score observed so far, if any terminal was seen.
    pub fn global_best_score(&self) -> Option<f64> {
        self.best_score_trace.last().map(|&(_, s)| s)
    }
}

/// Why a search run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// The search exhausted its tree or found a solved terminal state.
    Completed,
    /// The wall-clock limit expired.
    Timeout,
    /// The playout step budget was exhausted.
    Budget,
}

impl std::fmt::Display for Termination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Termination::Completed => "completed",
            Termination::Timeout => "timeout",
            Termination::Budget => "budget",
        })
    }
}

/// Outcome of one [`lds`] or [`ns`] invocation.
///
/// For LDS, `best_state` is the best terminal state seen anywhere in the run
/// and coincides with `global_best_state`. For NS, `best_state` is the
/// terminal state reached by the top-level move-commitment loop, which is the
/// algorithm's canonical answer; the best playout seen anywhere during the
/// run is tracked separately as `global_best_state` / `global_best_score`.
#[derive(Debug, Clone)]
pub struct SearchResult<S> {
    /// The search's answer; always a terminal state.
    pub best_state: S,
    /// Score of `best_state`.
    pub best_score: f64,
    /// Whether `global_best_score` reached the domain's solved threshold.
    /// Always false for domains that declare no threshold.
    pub solved: bool,
    /// Best terminal state observed anywhere during the run.
    pub global_best_state: S,
    /// Score of `global_best_state`.
    pub global_best_score: f64,
    pub stats: SearchStats,
    pub terminated_by: Termination,
}
