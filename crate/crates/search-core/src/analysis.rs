//! Closed-form step-count models for NS and LDS on uniform trees.
//!
//! For a uniform tree of height `h` and branching factor `b`, the total
//! number of playout steps follows
//!
//! * NS:  `t_n(h, b) = t_n(h-1, b) + b * t_{n-1}(h-1, b)`
//! * LDS: `t_n(h, b) = t_n(h-1, b) + (b - 1) * t_{n-1}(h-1, b)`
//!
//! with base cases `t_0(h, b) = h` (a playout of height `h` plays `h`
//! moves) and `t_n(0, b) = 0` (a terminal state). The per-node expansion
//! costs differ by exactly `t_{n-1}(h-1, b)`.
//!
//! All arithmetic saturates at `u64::MAX`; the counts grow like
//! `b^n * h^(n+1)` and overflow quickly for large parameters.

/// Steps of a nested search of level `n` on a uniform `(h, b)` tree.
pub fn paper_steps_ns(n: u32, h: u32, b: u64) -> u64 {
    steps_recurrence(n, h, b, b)
}

/// Steps of a limited discrepancy search of level `n` on a uniform `(h, b)`
/// tree. With `b = 1` there are no discrepancies to take, so every level
/// above 0 costs nothing: the single path is walked entirely above level 0.
pub fn paper_steps_lds(n: u32, h: u32, b: u64) -> u64 {
    steps_recurrence(n, h, b, b - 1)
}

fn steps_recurrence(n: u32, h: u32, b: u64, branch_weight: u64) -> u64 {
    assert!(b >= 1, "branching factor must be at least 1");
    let h = h as usize;
    // Bottom-up over levels: start from t_0(h) = h.
    let mut lower: Vec<u64> = (0..=h as u64).collect();
    for _ in 0..n {
        let mut current = vec![0u64; h + 1];
        for height in 1..=h {
            current[height] = current[height - 1]
                .saturating_add(branch_weight.saturating_mul(lower[height - 1]));
        }
        lower = current;
    }
    lower[h]
}

/// Number of distinct leaves LDS(`n`) visits on a uniform `(h, b)` tree:
/// `Σ_{k=0..min(n,h)} C(h, k) * (b-1)^k` (choose the depths that deviate and
/// one of the `b-1` alternatives at each).
pub fn lds_leaf_count(n: u32, h: u32, b: u64) -> u64 {
    assert!(b >= 1, "branching factor must be at least 1");
    let mut total: u64 = 0;
    for k in 0..=n.min(h) {
        let ways = binomial(h, k).saturating_mul((b - 1).saturating_pow(k));
        total = total.saturating_add(ways);
    }
    total
}

fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k as u128 {
        result = result.saturating_mul(n as u128 - i) / (i + 1);
        if result > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    result as u64
}
