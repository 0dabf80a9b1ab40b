//! The folding DP against brute-force enumeration of all nested structures,
//! plus solver soundness on random puzzles.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rna::{
    can_pair, fold, max_pairs, parse_dot_bracket, Base, RnaPuzzle, RnaState, MIN_HAIRPIN_LOOP,
};
use search_core::{lds, ns, ProblemState, SearchLimits};

/// Maximum pairs over every valid nested structure, by explicit recursive
/// enumeration of the first position's choices (unpaired, or paired with
/// each legal partner). Exponential, fine for short sequences.
fn brute_force_max_pairs(seq: &[Base], i: usize, j: usize) -> usize {
    if j < i + MIN_HAIRPIN_LOOP + 1 || i >= seq.len() || j >= seq.len() {
        return 0;
    }
    let mut best = brute_force_max_pairs(seq, i + 1, j);
    for l in (i + MIN_HAIRPIN_LOOP + 1)..=j {
        if can_pair(seq[i], seq[l]) {
            let mut pairs = 1 + brute_force_max_pairs(seq, i + 1, l - 1);
            if l < j {
                pairs += brute_force_max_pairs(seq, l + 1, j);
            }
            best = best.max(pairs);
        }
    }
    best
}

fn random_sequence(rng: &mut ChaCha8Rng, len: usize) -> Vec<Base> {
    (0..len)
        .map(|_| [Base::A, Base::C, Base::G, Base::U][rng.gen_range(0..4)])
        .collect()
}

/// True when `structure` is balanced with every loop of legal size.
fn valid_dot_bracket(structure: &str) -> bool {
    let mut stack = Vec::new();
    for (pos, c) in structure.chars().enumerate() {
        match c {
            '(' => stack.push(pos),
            ')' => match stack.pop() {
                Some(left) if pos - left - 1 >= MIN_HAIRPIN_LOOP => {}
                _ => return false,
            },
            '.' => {}
            _ => return false,
        }
    }
    stack.is_empty()
}

#[test]
fn dp_matches_brute_force_on_random_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..120 {
        let len = rng.gen_range(1..=14);
        let seq = random_sequence(&mut rng, len);
        let expected = brute_force_max_pairs(&seq, 0, len.saturating_sub(1));
        assert_eq!(max_pairs(&seq), expected, "sequence {seq:?}");
        // The emitted structure realizes the optimal pair count and is valid.
        let structure = fold(&seq);
        assert!(valid_dot_bracket(&structure), "structure {structure}");
        assert_eq!(structure.matches('(').count(), expected);
    }
}

#[test]
fn searches_solve_the_perfect_hairpin() {
    let puzzle = Arc::new(parse_dot_bracket("((((....))))").unwrap());
    let root = RnaState::new(Arc::clone(&puzzle));
    let result = ns(&root, 1, &SearchLimits::unlimited());
    assert!(result.solved);
    assert_eq!(result.best_score, 0.0);
    let result = lds(&root, 1, &SearchLimits::unlimited());
    assert!(result.solved);
}

#[test]
fn solved_states_fold_exactly_to_the_target() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..25 {
        // Build a guaranteed-valid target by folding a random sequence.
        let len = rng.gen_range(8..=24);
        let seq = random_sequence(&mut rng, len);
        let target = fold(&seq);
        let puzzle = Arc::new(RnaPuzzle::new("random", &target, None).unwrap());
        let result = ns(&RnaState::new(puzzle), 1, &SearchLimits::unlimited());
        if result.solved {
            let found = result.best_state.sequence().unwrap();
            let refolded = fold(&rna::parse_sequence(&found).unwrap());
            assert_eq!(refolded, target, "sequence {found}");
        }
    }
}

#[test]
fn terminal_states_honor_locks_or_are_the_declared_failure() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..25 {
        let len = rng.gen_range(8..=20);
        let seq = random_sequence(&mut rng, len);
        let target = fold(&seq);
        // Lock a few positions to the generating sequence's bases.
        let locks: String = seq
            .iter()
            .map(|b| if rng.gen_bool(0.3) { b.to_char() } else { 'N' })
            .collect();
        let puzzle = Arc::new(RnaPuzzle::new("locked", &target, Some(&locks)).unwrap());
        let result = lds(&RnaState::new(Arc::clone(&puzzle)), 1, &SearchLimits::unlimited());
        let state = &result.best_state;
        match state.sequence() {
            Some(found) => {
                for (pos, c) in found.chars().enumerate() {
                    if let Some(lock) = puzzle.lock(pos) {
                        assert_eq!(c, lock.to_char(), "lock at {pos} in {found}");
                    }
                }
            }
            None => {
                // Lock-failure terminal: scored as minus the whole length.
                assert_eq!(state.score(), -(puzzle.len() as f64));
            }
        }
    }
}

#[test]
fn fold_output_is_deterministic_across_calls() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..20 {
        let len = rng.gen_range(5..=40);
        let seq = random_sequence(&mut rng, len);
        assert_eq!(fold(&seq), fold(&seq));
    }
}
