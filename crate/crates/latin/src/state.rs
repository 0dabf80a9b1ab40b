//! Paired-square state, domain maintenance and propagation.

use std::sync::Arc;

use search_core::ProblemState;

use crate::{LatinConfig, VarHeuristic};

/// Address of one cell: square 0 or 1, then row and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub square: usize,
    pub row: usize,
    pub col: usize,
}

/// A partial assignment of the two squares.
///
/// Every unassigned cell carries a bitset of candidate values; `failed` is
/// set as soon as any domain empties or a superimposed pair repeats, which
/// makes the state terminal with score `-(free cells)`.
#[derive(Clone, Debug)]
pub struct LatinState {
    cfg: Arc<LatinConfig>,
    /// Assigned value per cell, -1 when free. Indexed square-major.
    values: Vec<i8>,
    /// Candidate bitset per cell; assigned cells hold the singleton bit.
    domains: Vec<u32>,
    /// `used_pairs[a]` has bit `b` when the ordered pair (a, b) is already
    /// superimposed somewhere.
    used_pairs: Vec<u32>,
    free: usize,
    failed: bool,
}

impl LatinState {
    /// Fresh, fully unassigned state.
    pub fn new(cfg: Arc<LatinConfig>) -> Self {
        let n = cfg.order;
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        LatinState {
            cfg,
            values: vec![-1; 2 * n * n],
            domains: vec![full; 2 * n * n],
            used_pairs: vec![0; n],
            free: 2 * n * n,
        failed: false,
        }
    }

    /// Initial state for a run: fresh, with symmetry breaking applied when
    /// the configuration asks for it.
    pub fn root(cfg: Arc<LatinConfig>) -> Self {
        let state = LatinState::new(Arc::clone(&cfg));
        if cfg.symmetry {
            state.apply_symmetry_breaking()
        } else {
            state
        }
    }

    pub fn config(&self) -> &LatinConfig {
        &self.cfg
    }

    pub fn order(&self) -> usize {
        self.cfg.order
    }

    pub fn free_cells(&self) -> usize {
        self.free
    }

    pub fn is_failed(&self) -> bool {
        self.failed
    }

    pub fn value(&self, cell: Cell) -> Option<u8> {
        let v = self.values[self.index(cell)];
        (v >= 0).then_some(v as u8)
    }

    /// Candidate bitset of a cell (singleton for assigned cells).
    pub fn domain(&self, cell: Cell) -> u32 {
        self.domains[self.index(cell)]
    }

    /// The two squares as value grids, once every cell is assigned.
    pub fn grids(&self) -> Option<(Vec<Vec<u8>>, Vec<Vec<u8>>)> {
        if self.free > 0 {
            return None;
        }
        let n = self.cfg.order;
        let grid = |square: usize| {
            (0..n)
                .map(|r| (0..n).map(|c| self.values[square * n * n + r * n + c] as u8).collect())
                .collect()
        };
        Some((grid(0), grid(1)))
    }

    fn index(&self, cell: Cell) -> usize {
        let n = self.cfg.order;
        debug_assert!(cell.square < 2 && cell.row < n && cell.col < n);
        cell.square * n * n + cell.row * n + cell.col
    }

    fn cell_at(&self, index: usize) -> Cell {
        let n = self.cfg.order;
        Cell { square: index / (n * n), row: index % (n * n) / n, col: index % n }
    }

    /// Assign `value` to `cell` and run the configured propagation,
    /// returning the successor state. Failure is a state, not an error: the
    /// result may come back with `is_failed()` set.
    pub fn propagate(&self, cell: Cell, value: u8) -> LatinState {
        let index = self.index(cell);
        debug_assert!(self.values[index] < 0, "cell already assigned");
        debug_assert!(self.domains[index] >> value & 1 == 1, "value not in domain");
        let mut next = self.clone();
        next.assign(index, value);
        next
    }

    /// Run the stronger propagation pass to fixpoint without assigning
    /// anything new from the caller's side.
    pub fn mac_fixpoint(&self) -> LatinState {
        let mut next = self.clone();
        next.mac_fixpoint_mut();
        next
    }

    /// Fix the first row of both squares and the first column of the first
    /// square to 0..n-1, propagating every assignment. Intended for the
    /// fresh initial state.
    pub fn apply_symmetry_breaking(&self) -> LatinState {
        let mut next = self.clone();
        let n = self.cfg.order;
        for col in 0..n {
            next.force(Cell { square: 0, row: 0, col }, col as u8);
        }
        for col in 0..n {
            next.force(Cell { square: 1, row: 0, col }, col as u8);
        }
        for row in 1..n {
            next.force(Cell { square: 0, row, col: 0 }, row as u8);
        }
        next
    }

    /// Assign with propagation, tolerating cells already forced to the
    /// target value by earlier propagation.
    fn force(&mut self, cell: Cell, value: u8) {
        if self.failed {
            return;
        }
        let index = self.index(cell);
        if self.values[index] >= 0 {
            if self.values[index] != value as i8 {
                self.failed = true;
            }
            return;
        }
        if self.domains[index] >> value & 1 == 0 {
            self.failed = true;
            return;
        }
        self.assign(index, value);
    }

    fn assign(&mut self, index: usize, value: u8) {
        self.assign_basic(index, value);
        if self.cfg.mac {
            self.mac_fixpoint_mut();
        }
    }

    /// Assignment plus the four direct removals: row, column, and the two
    /// pair-channeling exclusions. Does not run the fixpoint pass.
    fn assign_basic(&mut self, index: usize, value: u8) {
        let n = self.cfg.order;
        let cell = self.cell_at(index);
        self.values[index] = value as i8;
        self.domains[index] = 1 << value;
        self.free -= 1;

        // Row and column all-different within the same square.
        let base = cell.square * n * n;
        for col in 0..n {
            let other = base + cell.row * n + col;
            if other != index {
                self.remove_candidate(other, value);
            }
        }
        for row in 0..n {
            let other = base + row * n + cell.col;
            if other != index {
                self.remove_candidate(other, value);
            }
        }

        // Superimposed-pair channeling.
        let partner = (1 - cell.square) * n * n + cell.row * n + cell.col;
        if self.values[partner] >= 0 {
            let partner_value = self.values[partner] as u8;
            let (a, b) = if cell.square == 0 {
                (value, partner_value)
            } else {
                (partner_value, value)
            };
            if self.used_pairs[a as usize] >> b & 1 == 1 {
                // The pair is already superimposed elsewhere.
                self.failed = true;
            }
            self.used_pairs[a as usize] |= 1 << b;
            // No other position may complete (a, b) again: wherever one
            // side already shows a (resp. b), the other side loses b
            // (resp. a).
            for position in 0..n * n {
                let first = position;
                let second = n * n + position;
                if first == index || second == index {
                    continue;
                }
                if self.values[first] == a as i8 && self.values[second] < 0 {
                    self.remove_candidate(second, b);
                }
                if self.values[second] == b as i8 && self.values[first] < 0 {
                    self.remove_candidate(first, a);
                }
            }
        } else {
            // Partner still free: it may not complete any already-used pair
            // with this cell's value.
            if cell.square == 0 {
                let used = self.used_pairs[value as usize];
                for b in 0..n as u8 {
                    if used >> b & 1 == 1 {
                        self.remove_candidate(partner, b);
                    }
                }
            } else {
                for a in 0..n as u8 {
                    if self.used_pairs[a as usize] >> value & 1 == 1 {
                        self.remove_candidate(partner, a);
                    }
                }
            }
        }
    }

    fn remove_candidate(&mut self, index: usize, value: u8) {
        if self.values[index] >= 0 {
            if self.values[index] == value as i8 {
                // Removing an assigned cell's value is a contradiction.
                self.failed = true;
            }
            return;
        }
        let bit = 1u32 << value;
        if self.domains[index] & bit != 0 {
            self.domains[index] &= !bit;
            if self.domains[index] == 0 {
                self.failed = true;
            }
        }
    }

    /// Propagation to fixpoint: assign singleton domains, and per square,
    /// per line (row or column), per value, fail when the value has no home
    /// left and assign it when exactly one unassigned cell can still take
    /// it. Each pass restarts after any assignment so cascades run to
    /// completion.
    fn mac_fixpoint_mut(&mut self) {
        let n = self.cfg.order;
        'outer: loop {
            if self.failed {
                return;
            }
            for index in 0..2 * n * n {
                if self.values[index] < 0 && self.domains[index].count_ones() == 1 {
                    let value = self.domains[index].trailing_zeros() as u8;
                    self.assign_basic(index, value);
                    continue 'outer;
                }
            }
            for square in 0..2 {
                let base = square * n * n;
                for line in 0..n {
                    for value in 0..n as u8 {
                        // Row `line`, then column `line`.
                        for (is_row, stride) in [(true, 1usize), (false, n)] {
                            let start = if is_row { base + line * n } else { base + line };
                            let mut assigned_here = false;
                            let mut candidates = 0usize;
                            let mut last = usize::MAX;
                            for k in 0..n {
                                let index = start + k * stride;
                                if self.values[index] == value as i8 {
                                    assigned_here = true;
                                    break;
                                }
                                if self.values[index] < 0 && self.domains[index] >> value & 1 == 1 {
                                    candidates += 1;
                                    last = index;
                                }
                            }
                            if assigned_here {
                                continue;
                            }
                            if candidates == 0 {
                                self.failed = true;
                                return;
                            }
                            if candidates == 1 {
                                self.assign_basic(last, value);
                                continue 'outer;
                            }
                        }
                    }
                }
            }
            return;
        }
    }

    /// Total candidate count over every cell except `excluded`; assigned
    /// cells count one. The move-ordering key is the drop in this quantity.
    fn candidate_total_excluding(&self, excluded: usize) -> u32 {
        self.domains
            .iter()
            .enumerate()
            .filter(|&(index, _)| index != excluded)
            .map(|(_, d)| d.count_ones())
            .sum()
    }
}

/// Choose the next cell to branch on, or `None` on terminal states. Ties
/// fall back to (square, row, column) order.
pub fn select_variable(state: &LatinState, heuristic: VarHeuristic) -> Option<Cell> {
    if state.is_failed() || state.free_cells() == 0 {
        return None;
    }
    let n = state.order();
    let mut best: Option<(u32, usize)> = None;
    for index in 0..2 * n * n {
        if state.values[index] >= 0 {
            continue;
        }
        let key = match heuristic {
            VarHeuristic::Dom => state.domains[index].count_ones(),
            VarHeuristic::Deg => {
                let cell = state.cell_at(index);
                let base = cell.square * n * n;
                let mut degree = 0;
                for col in 0..n {
                    let other = base + cell.row * n + col;
                    if other != index && state.values[other] < 0 {
                        degree += 1;
                    }
                }
                for row in 0..n {
                    let other = base + row * n + cell.col;
                    if other != index && state.values[other] < 0 {
                        degree += 1;
                    }
                }
                degree
            }
        };
        if best.is_none_or(|(k, _)| key < k) {
            best = Some((key, index));
        }
    }
    best.map(|(_, index)| state.cell_at(index))
}

impl ProblemState for LatinState {
    type Move = u8;

    fn is_terminal(&self) -> bool {
        self.failed || self.free == 0
    }

    /// Values of the selected cell, least-constraining first: ordered by
    /// the number of candidate values their propagation deletes from the
    /// rest of the state, ties by value.
    fn legal_moves(&self) -> Vec<u8> {
        let Some(cell) = select_variable(self, self.cfg.var) else {
            return Vec::new();
        };
        let index = self.index(cell);
        let before = self.candidate_total_excluding(index);
        let domain = self.domains[index];
        let mut keyed: Vec<(u32, u8)> = (0..self.cfg.order as u8)
            .filter(|&v| domain >> v & 1 == 1)
            .map(|v| {
                let after = self.propagate(cell, v).candidate_total_excluding(index);
                (before - after, v)
            })
            .collect();
        keyed.sort();
        keyed.into_iter().map(|(_, v)| v).collect()
    }

    fn play(&self, mv: &u8) -> Self {
        let cell = select_variable(self, self.cfg.var).expect("play on terminal state");
        self.propagate(cell, *mv)
    }

    fn score(&self) -> f64 {
        if self.free == 0 {
            0.0
        } else {
            -(self.free as f64)
        }
    }

    fn solved_threshold(&self) -> Option<f64> {
        Some(0.0)
    }
}
