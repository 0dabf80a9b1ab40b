//! The search engine: playout, limited discrepancy search, nested search.
//!
//! All three entry points are strictly sequential and allocation-light; a
//! search owns its `Driver` and never touches global state, so independent
//! searches may run concurrently on independent states.

use std::time::{Duration, Instant};

use crate::{ProblemState, SearchLimits, SearchResult, SearchStats, Termination};

/// Greedy descent: repeatedly play the first legal move until terminal.
///
/// `stats.playout_steps` grows by the number of moves played and
/// `stats.playouts` by one. A terminal input is returned unchanged after a
/// zero-step playout.
pub fn playout<S: ProblemState>(state: &S, stats: &mut SearchStats) -> S {
    stats.playouts += 1;
    let mut current = state.clone();
    while !current.is_terminal() {
        let moves = current.legal_moves();
        let Some(first) = moves.first() else {
            contract_violation();
        };
        current = current.play(first);
        stats.playout_steps += 1;
    }
    current
}

/// Limited discrepancy search from `root`, allowing at most `level`
/// deviations from the heuristic-first move on any root-to-leaf path.
pub fn lds<S: ProblemState>(root: &S, level: u32, limits: &SearchLimits) -> SearchResult<S> {
    lds_impl(root, level, limits, None)
}

/// [`lds`] with a callback invoked on every terminal state the search
/// observes, in visit order. Meant for instrumentation and tests.
pub fn lds_with_observer<S: ProblemState>(
    root: &S,
    level: u32,
    limits: &SearchLimits,
    observer: &mut dyn FnMut(&S),
) -> SearchResult<S> {
    lds_impl(root, level, limits, Some(observer))
}

/// Nested search of the given level from `root`. Level 0 is a playout; at
/// level `n` every legal move is evaluated by a level `n-1` completion and
/// the move with the best completion (ties to the earlier move) is played.
pub fn ns<S: ProblemState>(root: &S, level: u32, limits: &SearchLimits) -> SearchResult<S> {
    ns_impl(root, level, limits, None)
}

/// [`ns`] with a terminal-state observer, as in [`lds_with_observer`].
pub fn ns_with_observer<S: ProblemState>(
    root: &S,
    level: u32,
    limits: &SearchLimits,
    observer: &mut dyn FnMut(&S),
) -> SearchResult<S> {
    ns_impl(root, level, limits, Some(observer))
}

fn lds_impl<S: ProblemState>(
    root: &S,
    level: u32,
    limits: &SearchLimits,
    observer: Option<&mut dyn FnMut(&S)>,
) -> SearchResult<S> {
    let mut driver = Driver::new(root, limits, observer);
    if level == 0 {
        // The whole run is a single playout-like descent.
        driver.stats.playouts += 1;
    }
    driver.lds_rec(root, level);
    driver.finish(None, root)
}

fn ns_impl<S: ProblemState>(
    root: &S,
    level: u32,
    limits: &SearchLimits,
    observer: Option<&mut dyn FnMut(&S)>,
) -> SearchResult<S> {
    let mut driver = Driver::new(root, limits, observer);
    let final_state = driver.ns_rec(root.clone(), level);
    driver.finish(final_state, root)
}

fn contract_violation() -> ! {
    panic!("problem contract violation: non-terminal state produced no legal moves");
}

enum Stop {
    Timeout,
    Budget,
    Solved,
}

struct Driver<'o, S: ProblemState> {
    deadline: Option<Instant>,
    budget: Option<u64>,
    threshold: Option<f64>,
    stats: SearchStats,
    /// Best terminal state seen anywhere, with its score.
    best: Option<(S, f64)>,
    stop: Option<Stop>,
    observer: Option<&'o mut dyn FnMut(&S)>,
}

impl<'o, S: ProblemState> Driver<'o, S> {
    fn new(root: &S, limits: &SearchLimits, observer: Option<&'o mut dyn FnMut(&S)>) -> Self {
        assert!(
            limits.max_seconds >= 0.0,
            "SearchLimits.max_seconds must be non-negative"
        );
        let deadline = (limits.max_seconds > 0.0 && limits.max_seconds.is_finite())
            .then(|| Instant::now() + Duration::from_secs_f64(limits.max_seconds));
        Driver {
            deadline,
            budget: (limits.step_budget > 0).then_some(limits.step_budget),
            threshold: root.solved_threshold(),
            stats: SearchStats::default(),
            best: None,
            stop: None,
            observer,
        }
    }

    /// Cooperative limit check; returns true once the search must unwind.
    fn should_stop(&mut self) -> bool {
        if self.stop.is_some() {
            return true;
        }
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                self.stop = Some(Stop::Timeout);
                return true;
            }
        }
        if let Some(budget) = self.budget {
            if self.stats.playout_steps >= budget {
                self.stop = Some(Stop::Budget);
                return true;
            }
        }
        false
    }

    /// Record a terminal state: update the global best, notify the observer
    /// and trigger the solved early-stop when the threshold is reached.
    fn observe_terminal(&mut self, state: &S) -> f64 {
        let score = state.score();
        let improved = match &self.best {
            Some((_, best)) => score > *best,
            None => true,
        };
        if improved {
            self.best = Some((state.clone(), score));
            self.stats.best_score_trace.push((self.stats.playout_steps, score));
        }
        if let Some(obs) = self.observer.as_mut() {
            obs(state);
        }
        if self.threshold.is_some_and(|t| score >= t) && self.stop.is_none() {
            self.stop = Some(Stop::Solved);
        }
        score
    }

    /// Engine-internal playout. Unlike the public [`playout`] it honors the
    /// run's limits unless `limited` is false; an interrupted playout returns
    /// the (non-terminal) state it reached.
    fn playout(&mut self, mut state: S, limited: bool) -> S {
        self.stats.playouts += 1;
        while !state.is_terminal() {
            if limited && self.should_stop() {
                return state;
            }
            let moves = state.legal_moves();
            let Some(first) = moves.first() else {
                contract_violation();
            };
            state = state.play(first);
            self.stats.playout_steps += 1;
        }
        self.observe_terminal(&state);
        state
    }

    /// Recursive LDS; returns the best score in the explored subtree, or
    /// `None` when the branch was cut off by a limit before completing.
    ///
    /// Level 0 is not special-cased: the loop below plays only the first
    /// move once the discrepancy budget is spent, which is exactly a
    /// playout. A move counts as a playout step when it is played by a
    /// level-0 call.
    fn lds_rec(&mut self, state: &S, level: u32) -> Option<f64> {
        if self.should_stop() {
            return None;
        }
        if state.is_terminal() {
            return Some(self.observe_terminal(state));
        }
        let moves = state.legal_moves();
        if moves.is_empty() {
            contract_violation();
        }
        if level > 0 {
            self.stats.nodes_expanded += 1;
        }
        let mut best: Option<f64> = None;
        for (index, mv) in moves.iter().enumerate() {
            let branch = if index == 0 {
                let child = state.play(mv);
                if level == 0 {
                    self.stats.playout_steps += 1;
                }
                self.lds_rec(&child, level)
            } else if level > 0 {
                if level == 1 {
                    // The discrepancy child is explored at level 0: a fresh
                    // playout-like descent begins there.
                    self.stats.playouts += 1;
                }
                let child = state.play(mv);
                self.lds_rec(&child, level - 1)
            } else {
                continue;
            };
            if let Some(score) = branch {
                if best.is_none_or(|b| score > b) {
                    best = Some(score);
                }
            }
            if self.stop.is_some() {
                break;
            }
        }
        best
    }

    /// Recursive NS; returns the terminal state reached by the level's
    /// move-commitment loop, or `None` when interrupted by a limit.
    fn ns_rec(&mut self, state: S, level: u32) -> Option<S> {
        if level == 0 {
            let end = self.playout(state, true);
            return end.is_terminal().then_some(end);
        }
        let mut current = state;
        while !current.is_terminal() {
            if self.should_stop() {
                return None;
            }
            let moves = current.legal_moves();
            if moves.is_empty() {
                contract_violation();
            }
            self.stats.nodes_expanded += 1;
            let mut best: Option<(usize, f64)> = None;
            for (index, mv) in moves.iter().enumerate() {
                let child = current.play(mv);
                if let Some(completion) = self.ns_rec(child, level - 1) {
                    let score = completion.score();
                    if best.is_none_or(|(_, b)| score > b) {
                        best = Some((index, score));
                    }
                }
                if self.stop.is_some() {
                    return None;
                }
            }
            let Some((index, _)) = best else {
                return None;
            };
            current = current.play(&moves[index]);
        }
        self.observe_terminal(&current);
        Some(current)
    }

    /// Assemble the result. `ns_final` is the terminal state the NS loop
    /// reached, when it completed; LDS passes `None` and reports the global
    /// best as its answer.
    fn finish(mut self, ns_final: Option<S>, root: &S) -> SearchResult<S> {
        let terminated_by = match self.stop {
            None | Some(Stop::Solved) => Termination::Completed,
            Some(Stop::Timeout) => Termination::Timeout,
            Some(Stop::Budget) => Termination::Budget,
        };
        if self.best.is_none() {
            // Interrupted before any terminal was observed: complete the
            // root greedily, ignoring limits, so the result is a real
            // terminal state. The extra steps stay in the counters.
            self.playout(root.clone(), false);
        }
        let (global_best_state, global_best_score) =
            self.best.clone().expect("playout always yields a terminal state");
        let solved = self.threshold.is_some_and(|t| global_best_score >= t);
        let (best_state, best_score) = match ns_final {
            Some(state) => {
                let score = state.score();
                (state, score)
            }
            None => (global_best_state.clone(), global_best_score),
        };
        SearchResult {
            best_state,
            best_score,
            solved,
            global_best_state,
            global_best_score,
            stats: self.stats,
            terminated_by,
        }
    }
}
