//! Synthetic uniform trees used to validate discrepancy semantics and the
//! step-count recurrences, plus the fixed 8-leaf binary example tree.
//!
//! Trees are lazy: a state is just the move path from the root, and leaf
//! scores come from a shared scoring function, so even tall trees cost
//! nothing to "build".

use std::sync::Arc;

use crate::ProblemState;

/// Leaf scores of the example tree, in left-to-right leaf order. A score of
/// 0 means solved; both solutions sit two discrepancies from the heuristic
/// (leftmost) path.
const FIGURE_LEAF_SCORES: [f64; 8] = [-2.0, -2.0, -1.0, 0.0, -3.0, -2.0, 0.0, -1.0];

struct TreeSpec {
    height: usize,
    branching: u8,
    leaf_score: Box<dyn Fn(&[u8]) -> f64 + Send + Sync>,
    solved_threshold: Option<f64>,
}

/// A node of a uniform tree: every internal node has the same number of
/// children, in fixed heuristic order (child 0 is the heuristic move).
#[derive(Clone)]
pub struct TreeState {
    spec: Arc<TreeSpec>,
    path: Vec<u8>,
}

impl TreeState {
    /// Moves taken from the root to reach this node.
    pub fn path(&self) -> &[u8] {
        &self.path
    }

    /// Number of non-first moves on the path.
    pub fn discrepancies(&self) -> usize {
        self.path.iter().filter(|&&m| m != 0).count()
    }

    /// Index of this leaf in left-to-right order (path read as a base-`b`
    /// number). Only meaningful on terminal states.
    pub fn leaf_index(&self) -> usize {
        self.path
            .iter()
            .fold(0usize, |acc, &m| acc * self.spec.branching as usize + m as usize)
    }

    pub fn height(&self) -> usize {
        self.spec.height
    }

    pub fn branching(&self) -> u8 {
        self.spec.branching
    }
}

impl std::fmt::Debug for TreeState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TreeState")
            .field("height", &self.spec.height)
            .field("branching", &self.spec.branching)
            .field("path", &self.path)
            .finish()
    }
}

impl ProblemState for TreeState {
    type Move = u8;

    fn is_terminal(&self) -> bool {
        self.path.len() == self.spec.height
    }

    fn legal_moves(&self) -> Vec<u8> {
        if self.is_terminal() {
            Vec::new()
        } else {
            (0..self.spec.branching).collect()
        }
    }

    fn play(&self, mv: &u8) -> Self {
        debug_assert!(*mv < self.spec.branching);
        let mut path = self.path.clone();
        path.push(*mv);
        TreeState { spec: Arc::clone(&self.spec), path }
    }

    fn score(&self) -> f64 {
        if self.is_terminal() {
            (self.spec.leaf_score)(&self.path)
        } else {
            f64::NEG_INFINITY
        }
    }

    fn solved_threshold(&self) -> Option<f64> {
        self.spec.solved_threshold
    }
}

/// Root of a uniform tree of the given height and branching factor with
/// leaf scores supplied by `leaf_score` (called with the full move path).
/// The tree reports no solved threshold, so searches always explore it in
/// full.
pub fn make_uniform_tree<F>(height: usize, branching: u8, leaf_score: F) -> TreeState
where
    F: Fn(&[u8]) -> f64 + Send + Sync + 'static,
{
    assert!(branching >= 1, "branching factor must be at least 1");
    TreeState {
        spec: Arc::new(TreeSpec {
            height,
            branching,
            leaf_score: Box::new(leaf_score),
            solved_threshold: None,
        }),
        path: Vec::new(),
    }
}

/// As [`make_uniform_tree`], but the tree is a decision problem: a leaf
/// scoring at least `threshold` stops the search as solved.
pub fn make_uniform_tree_with_threshold<F>(
    height: usize,
    branching: u8,
    leaf_score: F,
    threshold: f64,
) -> TreeState
where
    F: Fn(&[u8]) -> f64 + Send + Sync + 'static,
{
    assert!(branching >= 1, "branching factor must be at least 1");
    TreeState {
        spec: Arc::new(TreeSpec {
            height,
            branching,
            leaf_score: Box::new(leaf_score),
            solved_threshold: Some(threshold),
        }),
        path: Vec::new(),
    }
}

/// The height-3 binary example tree with leaf scores
/// (-2, -2, -1, 0, -3, -2, 0, -1) left to right; score 0 means solved.
pub fn make_figure_tree() -> TreeState {
    make_uniform_tree_with_threshold(
        3,
        2,
        |path| {
            let index = path.iter().fold(0usize, |acc, &m| acc * 2 + m as usize);
            FIGURE_LEAF_SCORES[index]
        },
        0.0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_tree_leaf_scores() {
        let root = make_figure_tree();
        // Leftmost leaf.
        let lll = root.play(&0).play(&0).play(&0);
        assert_eq!(lll.score(), -2.0);
        // Right subtree solution at R,R,L.
        let rrl = root.play(&1).play(&1).play(&0);
        assert_eq!(rrl.score(), 0.0);
        // R,L,L is the worst leaf.
        let rll = root.play(&1).play(&0).play(&0);
        assert_eq!(rll.score(), -3.0);
        assert_eq!(root.solved_threshold(), Some(0.0));
    }

    #[test]
    fn zero_height_tree_is_terminal_root() {
        let root = make_uniform_tree(0, 4, |_| 7.0);
        assert!(root.is_terminal());
        assert_eq!(root.score(), 7.0);
        assert!(root.legal_moves().is_empty());
    }

    #[test]
    fn leaf_index_reads_path_in_base_b() {
        let root = make_uniform_tree(3, 3, |_| 0.0);
        let leaf = root.play(&2).play(&0).play(&1);
        assert_eq!(leaf.leaf_index(), 2 * 9 + 0 * 3 + 1);
        assert_eq!(leaf.discrepancies(), 2);
    }

    #[test]
    fn non_terminal_score_is_neg_infinity() {
        let root = make_uniform_tree(2, 2, |_| 1.0);
        assert_eq!(root.score(), f64::NEG_INFINITY);
    }
}
