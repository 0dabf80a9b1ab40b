//! Deterministic maximum-base-pair folding.
//!
//! `fold` computes a nested secondary structure with the maximum number of
//! Watson-Crick or GU wobble pairs, subject to the minimum hairpin loop of
//! 3 unpaired-capable positions between any pair. Ties between optimal
//! structures are broken deterministically by preferring to pair the
//! smallest left index, then the smallest partner for it.
//!
//! This is an intentionally simple substitute for a thermodynamic folding
//! model: it keeps the domain dependency-free and exactly reproducible, at
//! the cost of realism. Solve counts on published puzzle collections are
//! not comparable with energy-model results.

use crate::{can_pair, Base, MIN_HAIRPIN_LOOP};

/// Fold a complete sequence into dot-bracket notation.
pub fn fold(sequence: &[Base]) -> String {
    let n = sequence.len();
    let mut structure = vec![b'.'; n];
    if n >= MIN_HAIRPIN_LOOP + 2 {
        let dp = pair_table(sequence);
        traceback(sequence, &dp, 0, n - 1, &mut structure);
    }
    String::from_utf8(structure).expect("dot-bracket is ascii")
}

/// Number of pairs in the optimal structure of `sequence`.
pub fn max_pairs(sequence: &[Base]) -> usize {
    let n = sequence.len();
    if n < MIN_HAIRPIN_LOOP + 2 {
        return 0;
    }
    pair_table(sequence)[0][n - 1] as usize
}

/// `dp[i][j]` = maximum pairs within `sequence[i..=j]`. Spans shorter than
/// a hairpin stay zero.
fn pair_table(sequence: &[Base]) -> Vec<Vec<u16>> {
    let n = sequence.len();
    let mut dp = vec![vec![0u16; n]; n];
    for span in (MIN_HAIRPIN_LOOP + 1)..n {
        for i in 0..n - span {
            let j = i + span;
            // Either i stays unpaired...
            let mut best = dp[i + 1][j];
            // ...or i pairs with some l far enough to the right.
            for l in (i + MIN_HAIRPIN_LOOP + 1)..=j {
                if can_pair(sequence[i], sequence[l]) {
                    let inside = dp[i + 1][l - 1];
                    let outside = if l < j { dp[l + 1][j] } else { 0 };
                    best = best.max(1 + inside + outside);
                }
            }
            dp[i][j] = best;
        }
    }
    dp
}

fn traceback(sequence: &[Base], dp: &[Vec<u16>], i: usize, j: usize, out: &mut [u8]) {
    if j < i + MIN_HAIRPIN_LOOP + 1 || dp[i][j] == 0 {
        return;
    }
    let target = dp[i][j];
    for l in (i + MIN_HAIRPIN_LOOP + 1)..=j {
        if !can_pair(sequence[i], sequence[l]) {
            continue;
        }
        let inside = dp[i + 1][l - 1];
        let outside = if l < j { dp[l + 1][j] } else { 0 };
        if 1 + inside + outside == target {
            out[i] = b'(';
            out[l] = b')';
            traceback(sequence, dp, i + 1, l - 1, out);
            if l < j {
                traceback(sequence, dp, l + 1, j, out);
            }
            return;
        }
    }
    // Pairing i is not optimal anywhere: leave it unpaired.
    traceback(sequence, dp, i + 1, j, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_sequence;

    fn fold_str(s: &str) -> String {
        fold(&parse_sequence(s).unwrap())
    }

    #[test]
    fn perfect_hairpin_folds_to_its_target() {
        assert_eq!(fold_str("GGGGAAAACCCC"), "((((....))))");
    }

    #[test]
    fn unpairable_sequence_stays_flat() {
        assert_eq!(fold_str("AAAAAAA"), ".......");
    }

    #[test]
    fn short_loops_are_forbidden() {
        assert_eq!(fold_str("GCGC"), "....");
        // A loop of exactly 3 is the shortest allowed hairpin.
        assert_eq!(fold_str("GAAAC"), "(...)");
    }

    #[test]
    fn traceback_prefers_the_smallest_partner() {
        // G can close with U at 4 or C at 5, both optimal; the wobble pair
        // at the smaller index wins.
        assert_eq!(fold_str("GAAAUC"), "(...).");
    }

    #[test]
    fn wobble_pairs_count() {
        assert_eq!(fold_str("GGGGAAAAUUUU"), "((((....))))");
    }

    #[test]
    fn fold_is_deterministic() {
        let seq = parse_sequence("GCGCAAAAGCGCAAAAGCGC").unwrap();
        assert_eq!(fold(&seq), fold(&seq));
    }
}
