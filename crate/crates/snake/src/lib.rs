//! Snake-in-the-box: grow the longest induced path in the `d`-dimensional
//! hypercube, starting from vertex 0.
//!
//! A path is a snake when consecutive vertices differ in exactly one bit
//! and no vertex is adjacent to a non-consecutive path vertex (so every
//! path vertex touches at most two others). A move flips one bit of the
//! head; it is legal when the new vertex is unvisited and adjacent to no
//! visited vertex other than the current head.
//!
//! Moves are sorted by the number of legal moves available after playing
//! them, ascending, so the search prefers corridors over open rooms; moves
//! that lead straight into a dead end carry a large penalty and sort last.
//! Ties break on the flipped bit index. The score of a state is its edge
//! count, and a state is terminal when the head cannot be extended.

use search_core::ProblemState;
use thiserror::Error;

/// Move score assigned to extensions that leave no further move. Any value
/// larger than the dimension works; this matches the violation constant
/// used elsewhere in the workspace.
pub const DEAD_END_PENALTY: u32 = 1_000_000;

pub const MAX_DIMENSION: u8 = 20;

#[derive(Debug, Error)]
pub enum SnakeError {
    #[error("dimension must be between 1 and {MAX_DIMENSION}, got {0}")]
    BadDimension(u8),
    #[error("invalid start path: {0}")]
    BadPath(String),
}

/// An induced path in the hypercube, always rooted at vertex 0.
#[derive(Clone, Debug)]
pub struct SnakeState {
    dimension: u8,
    path: Vec<u32>,
    visited: Vec<u64>,
}

impl SnakeState {
    pub fn new(dimension: u8) -> Result<Self, SnakeError> {
        if dimension == 0 || dimension > MAX_DIMENSION {
            return Err(SnakeError::BadDimension(dimension));
        }
        let words = (1usize << dimension).div_ceil(64);
        let mut state = SnakeState { dimension, path: vec![0], visited: vec![0; words] };
        state.mark(0);
        Ok(state)
    }

    /// Resume from an explicit vertex path, validating it first.
    pub fn from_start_path(dimension: u8, path: &[u32]) -> Result<Self, SnakeError> {
        if dimension == 0 || dimension > MAX_DIMENSION {
            return Err(SnakeError::BadDimension(dimension));
        }
        if !is_valid_snake(dimension, path) {
            return Err(SnakeError::BadPath(format!("{path:?} is not a snake")));
        }
        if path[0] != 0 {
            return Err(SnakeError::BadPath("path must start at vertex 0".into()));
        }
        let words = (1usize << dimension).div_ceil(64);
        let mut state = SnakeState { dimension, path: Vec::new(), visited: vec![0; words] };
        for &v in path {
            state.path.push(v);
            state.mark(v);
        }
        Ok(state)
    }

    pub fn dimension(&self) -> u8 {
        self.dimension
    }

    pub fn path(&self) -> &[u32] {
        &self.path
    }

    /// Edge count of the path.
    pub fn edges(&self) -> usize {
        self.path.len() - 1
    }

    fn head(&self) -> u32 {
        *self.path.last().expect("path is never empty")
    }

    fn mark(&mut self, v: u32) {
        self.visited[v as usize / 64] |= 1 << (v % 64);
    }

    fn is_visited(&self, v: u32) -> bool {
        self.visited[v as usize / 64] >> (v % 64) & 1 == 1
    }

    /// True when `v` (a neighbor of the head) may extend the snake: it is
    /// unvisited and touches no visited vertex except the head.
    fn extension_ok(&self, v: u32) -> bool {
        if self.is_visited(v) {
            return false;
        }
        let head = self.head();
        for bit in 0..self.dimension {
            let u = v ^ (1 << bit);
            if u != head && self.is_visited(u) {
                return false;
            }
        }
        true
    }

    fn legal_bits(&self) -> Vec<u8> {
        let head = self.head();
        (0..self.dimension)
            .filter(|&bit| self.extension_ok(head ^ (1 << bit)))
            .collect()
    }

    /// Number of legal extensions available after appending `v`, i.e. with
    /// `v` treated as both visited and the new head.
    fn extension_count_after(&self, v: u32) -> u32 {
        let mut count = 0;
        for bit in 0..self.dimension {
            let w = v ^ (1 << bit);
            if self.is_visited(w) {
                continue;
            }
            let mut ok = true;
            for other in 0..self.dimension {
                let u = w ^ (1 << other);
                if u != v && self.is_visited(u) {
                    ok = false;
                    break;
                }
            }
            if ok {
                count += 1;
            }
        }
        count
    }
}

impl ProblemState for SnakeState {
    type Move = u8;

    fn is_terminal(&self) -> bool {
        self.legal_bits().is_empty()
    }

    fn legal_moves(&self) -> Vec<u8> {
        let head = self.head();
        let mut keyed: Vec<(u32, u8)> = self
            .legal_bits()
            .into_iter()
            .map(|bit| {
                let after = self.extension_count_after(head ^ (1 << bit));
                let key = if after == 0 { DEAD_END_PENALTY } else { after };
                (key, bit)
            })
            .collect();
        keyed.sort();
        keyed.into_iter().map(|(_, bit)| bit).collect()
    }

    fn play(&self, mv: &u8) -> Self {
        let v = self.head() ^ (1u32 << mv);
        debug_assert!(self.extension_ok(v), "illegal snake extension");
        let mut next = self.clone();
        next.path.push(v);
        next.mark(v);
        next
    }

    fn score(&self) -> f64 {
        self.edges() as f64
    }
}

/// Independent whole-path snake predicate: vertices in range and distinct,
/// consecutive vertices adjacent, non-consecutive vertices never adjacent.
pub fn is_valid_snake(dimension: u8, path: &[u32]) -> bool {
    if dimension == 0 || dimension > MAX_DIMENSION || path.is_empty() {
        return false;
    }
    let size = 1u64 << dimension;
    if path.iter().any(|&v| v as u64 >= size) {
        return false;
    }
    for (i, &a) in path.iter().enumerate() {
        for (j, &b) in path.iter().enumerate().skip(i + 1) {
            if a == b {
                return false;
            }
            let adjacent = (a ^ b).count_ones() == 1;
            if j == i + 1 {
                if !adjacent {
                    return false;
                }
            } else if adjacent {
                return false;
            }
        }
    }
    true
}
