//! Graeco-Latin squares as a search domain.
//!
//! Two order-`n` squares are filled simultaneously. A move assigns a value
//! to one chosen cell; the branching at every search node is over the
//! values of that single cell. Domains are maintained incrementally:
//! assigning value `v` to a cell removes `v` from the rest of its row and
//! column in the same square, and the superimposed-pair constraint is
//! channeled both ways so that a pair of values `(a, b)` can never be
//! completed twice.
//!
//! Variable selection offers the `dom` heuristic (smallest domain) and the
//! `deg` heuristic (fewest free cells in the same row and column). Values
//! are ordered least-constraining first: by the total number of candidate
//! values their propagation deletes from other cells.
//!
//! A state is terminal when every cell is assigned (score 0, solved) or
//! when some domain became empty (score is minus the number of free
//! cells). Optional extras: lexicographic symmetry breaking of the first
//! rows and first column, and a stronger propagation pass ([`mac`]-style)
//! that assigns forced values and detects dead rows and columns early.

mod state;

pub use state::{select_variable, Cell, LatinState};

/// Variable selection heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarHeuristic {
    /// Smallest number of candidate values.
    Dom,
    /// Fewest free cells in the same row and column of the same square.
    Deg,
}

impl std::fmt::Display for VarHeuristic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            VarHeuristic::Dom => "dom",
            VarHeuristic::Deg => "deg",
        })
    }
}

impl std::str::FromStr for VarHeuristic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dom" => Ok(VarHeuristic::Dom),
            "deg" => Ok(VarHeuristic::Deg),
            other => Err(format!("unknown variable heuristic {other:?} (expected dom or deg)")),
        }
    }
}

/// Search configuration for one Graeco-Latin run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatinConfig {
    /// Order of the squares. Order 6 is accepted but has no solution.
    pub order: usize,
    pub var: VarHeuristic,
    /// Fix the first rows of both squares and the first column of the
    /// first square to lexicographic order before searching.
    pub symmetry: bool,
    /// Run the stronger propagation pass after every assignment.
    pub mac: bool,
}

/// Largest supported order; domains are 32-bit sets.
pub const MAX_ORDER: usize = 32;

impl LatinConfig {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1 && order <= MAX_ORDER, "order must be in 1..={MAX_ORDER}");
        LatinConfig { order, var: VarHeuristic::Deg, symmetry: false, mac: false }
    }

    pub fn with_var(mut self, var: VarHeuristic) -> Self {
        self.var = var;
        self
    }

    pub fn with_symmetry(mut self, symmetry: bool) -> Self {
        self.symmetry = symmetry;
        self
    }

    pub fn with_mac(mut self, mac: bool) -> Self {
        self.mac = mac;
        self
    }
}

/// True iff both grids are Latin squares and every superimposed ordered
/// pair of symbols occurs exactly once. Grids must be fully assigned with
/// values `0..n-1`.
pub fn is_graeco_latin(first: &[Vec<u8>], second: &[Vec<u8>]) -> bool {
    let n = first.len();
    if n == 0 || second.len() != n {
        return false;
    }
    for grid in [first, second] {
        if grid.iter().any(|row| row.len() != n) {
            return false;
        }
        if grid.iter().flatten().any(|&v| v as usize >= n) {
            return false;
        }
        // Rows and columns must each hold every value once.
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut row_seen[grid[i][j] as usize], true) {
                    return false;
                }
                if std::mem::replace(&mut col_seen[grid[j][i] as usize], true) {
                    return false;
                }
            }
        }
    }
    let mut pairs = vec![false; n * n];
    for r in 0..n {
        for c in 0..n {
            let key = first[r][c] as usize * n + second[r][c] as usize;
            if std::mem::replace(&mut pairs[key], true) {
                return false;
            }
        }
    }
    true
}

/// Render two grids in the paired `a,b` cell format, one row per line.
pub fn format_pair_square(first: &[Vec<u8>], second: &[Vec<u8>]) -> String {
    first
        .iter()
        .zip(second)
        .map(|(row_a, row_b)| {
            row_a
                .iter()
                .zip(row_b)
                .map(|(a, b)| format!("{a},{b}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}
