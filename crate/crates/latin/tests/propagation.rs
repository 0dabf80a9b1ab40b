//! Propagation safety against exhaustive completion enumeration, solution
//! soundness, and the flag matrix.

use std::sync::Arc;

use latin::{is_graeco_latin, select_variable, Cell, LatinConfig, LatinState, VarHeuristic};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use search_core::{lds, ns, ProblemState, SearchLimits};

fn all_cells(n: usize) -> impl Iterator<Item = Cell> {
    (0..2).flat_map(move |square| {
        (0..n).flat_map(move |row| (0..n).map(move |col| Cell { square, row, col }))
    })
}

/// Independent completion enumerator: extends the assignment cell by cell
/// in index order, pruning only on direct constraint violations (row or
/// column duplicate, repeated superimposed pair), without any domain
/// reasoning. Calls `found` with every complete consistent assignment.
fn enumerate_completions(
    n: usize,
    values: &mut Vec<Option<u8>>,
    position: usize,
    found: &mut dyn FnMut(&[Option<u8>]),
) {
    if position == 2 * n * n {
        found(values);
        return;
    }
    if values[position].is_some() {
        enumerate_completions(n, values, position + 1, found);
        return;
    }
    'candidate: for v in 0..n as u8 {
        let square = position / (n * n);
        let row = position % (n * n) / n;
        let col = position % n;
        let base = square * n * n;
        for k in 0..n {
            if k != col && values[base + row * n + k] == Some(v) {
                continue 'candidate;
            }
            if k != row && values[base + k * n + col] == Some(v) {
                continue 'candidate;
            }
        }
        // Pair uniqueness against every completed pair.
        let partner = (1 - square) * n * n + row * n + col;
        if let Some(w) = values[partner] {
            let (a, b) = if square == 0 { (v, w) } else { (w, v) };
            for p in 0..n * n {
                if p == row * n + col {
                    continue;
                }
                if values[p] == Some(a) && values[n * n + p] == Some(b) {
                    continue 'candidate;
                }
            }
        }
        values[position] = Some(v);
        enumerate_completions(n, values, position + 1, found);
        values[position] = None;
    }
}

/// For each cell, the set of values used by at least one full completion.
fn completion_support(state: &LatinState) -> Vec<u32> {
    let n = state.order();
    let mut values: Vec<Option<u8>> =
        all_cells(n).map(|c| state.value(c)).collect();
    let mut support = vec![0u32; 2 * n * n];
    enumerate_completions(n, &mut values, 0, &mut |complete| {
        for (i, v) in complete.iter().enumerate() {
            support[i] |= 1 << v.unwrap();
        }
    });
    support
}

/// Propagation safety: every value deleted from a domain is unused by all
/// completions of the current assignment, i.e. the completion support is a
/// subset of the maintained domain.
fn assert_domains_cover_support(state: &LatinState) {
    let n = state.order();
    let support = completion_support(state);
    for (i, cell) in all_cells(n).enumerate() {
        let domain = state.domain(cell);
        assert_eq!(
            support[i] & !domain,
            0,
            "cell {cell:?}: support {:#b} not contained in domain {:#b}",
            support[i],
            domain
        );
    }
}

#[test]
fn plain_propagation_never_deletes_a_supported_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 2..=4usize {
        for _ in 0..6 {
            let cfg = Arc::new(LatinConfig::new(n));
            let mut state = LatinState::new(cfg);
            let prefix = rng.gen_range(0..=n);
            for _ in 0..prefix {
                if state.is_terminal() {
                    break;
                }
                let moves = state.legal_moves();
                let pick = moves[rng.gen_range(0..moves.len())];
                state = state.play(&pick);
            }
            if !state.is_failed() {
                assert_domains_cover_support(&state);
            }
        }
    }
}

#[test]
fn mac_propagation_never_deletes_a_supported_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for n in 2..=4usize {
        for _ in 0..6 {
            let cfg = Arc::new(LatinConfig::new(n).with_mac(true));
            let mut state = LatinState::new(cfg);
            let prefix = rng.gen_range(0..=n);
            for _ in 0..prefix {
                if state.is_terminal() {
                    break;
                }
                let moves = state.legal_moves();
                let pick = moves[rng.gen_range(0..moves.len())];
                state = state.play(&pick);
            }
            if !state.is_failed() {
                assert_domains_cover_support(&state);
            }
        }
    }
}

#[test]
fn every_zero_score_terminal_is_a_graeco_latin_square() {
    for order in [3usize, 4, 5] {
        let cfg = Arc::new(LatinConfig::new(order));
        let result = ns(&LatinState::root(cfg), 2, &SearchLimits::with_max_seconds(30.0));
        if result.solved {
            let (a, b) = result.best_state.grids().expect("solved state is complete");
            assert!(is_graeco_latin(&a, &b), "order {order}");
        }
    }
}

#[test]
fn order6_low_level_searches_come_back_unsolved() {
    let cfg = Arc::new(LatinConfig::new(6));
    let root = LatinState::root(cfg);
    let limits = SearchLimits::with_max_seconds(30.0);
    for level in 0..=1 {
        assert!(!lds(&root, level, &limits).solved);
        assert!(!ns(&root, level, &limits).solved);
    }
}

#[test]
fn all_flag_combinations_produce_valid_squares_when_solved() {
    for var in [VarHeuristic::Deg, VarHeuristic::Dom] {
        for symmetry in [false, true] {
            for mac in [false, true] {
                let cfg = Arc::new(
                    LatinConfig::new(5).with_var(var).with_symmetry(symmetry).with_mac(mac),
                );
                let root = LatinState::root(Arc::clone(&cfg));
                let result = ns(&root, 3, &SearchLimits::with_max_seconds(30.0));
                if result.solved {
                    let (a, b) = result.best_state.grids().unwrap();
                    assert!(
                        is_graeco_latin(&a, &b),
                        "var={var:?} sym={symmetry} mac={mac}"
                    );
                }
            }
        }
    }
}

#[test]
fn selected_variable_matches_a_direct_recount() {
    // Walk a few moves at order 4 and re-derive the deg selection by hand.
    let cfg = Arc::new(LatinConfig::new(4));
    let mut state = LatinState::new(cfg);
    for _ in 0..3 {
        let chosen = select_variable(&state, VarHeuristic::Deg).unwrap();
        let n = state.order();
        let degree = |cell: Cell| {
            let mut d = 0;
            for k in 0..n {
                if k != cell.col
                    && state.value(Cell { square: cell.square, row: cell.row, col: k }).is_none()
                {
                    d += 1;
                }
                if k != cell.row
                    && state.value(Cell { square: cell.square, row: k, col: cell.col }).is_none()
                {
                    d += 1;
                }
            }
            d
        };
        let best = all_cells(n)
            .filter(|&c| state.value(c).is_none())
            .min_by_key(|&c| (degree(c), c.square, c.row, c.col))
            .unwrap();
        assert_eq!(chosen, best);
        let moves = state.legal_moves();
        state = state.play(&moves[0]);
        if state.is_terminal() {
            break;
        }
    }
}
