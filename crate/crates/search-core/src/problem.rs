/// A search state over which the engine can run playouts, LDS and NS.
///
/// Implementations must be deterministic: `legal_moves` returns the same
/// ordered list for equal states, and `play` has no observable side effects
/// beyond producing the successor. The move ordering is the domain's
/// heuristic: the first move is the heuristic-best choice and every later
/// move costs one discrepancy under LDS.
pub trait ProblemState: Clone {
    /// Domain decision token. The total order is the deterministic
    /// tie-breaker when heuristic values are equal.
    type Move: Clone + Ord;

    /// True when no further moves exist and `score` is meaningful.
    fn is_terminal(&self) -> bool;

    /// Ordered legal moves, heuristic-best first. Non-terminal states must
    /// return at least one move; terminal states return none.
    fn legal_moves(&self) -> Vec<Self::Move>;

    /// Successor state after playing `mv`.
    fn play(&self, mv: &Self::Move) -> Self;

    /// Score to maximize. Must be defined at least on terminal states.
    fn score(&self) -> f64;

    /// Decision domains return the score at which a terminal state counts as
    /// a solution (the engine stops as soon as one is seen). Optimization
    /// domains return `None` and never report `solved`.
    fn solved_threshold(&self) -> Option<f64> {
        None
    }
}
