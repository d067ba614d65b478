//! Arithmetic core for the arrangement cost formulas, working over a
//! partition's subtree sizes `n_0 >= n_1 >= ... >= n_k` and the tree size n.
//!
//! `alpha` is 0 for a free tree and 1 for an anchored one; a surrounded
//! layout with pair count p peels subtrees `T_1 ..= T_{2p - alpha}` and
//! keeps the rest (including `T_0`) as the center tree.

use super::{FormulaMode, PPolicy};

pub(crate) fn alpha(anchored: bool) -> usize {
    anchored as usize
}

/// Number of peeled subtrees for pair count `p`.
pub(crate) fn peeled_count(p: usize, anchored: bool) -> usize {
    2 * p - alpha(anchored)
}

/// Largest feasible pair count for a partition whose last index is `k`.
pub(crate) fn max_p(k: usize, anchored: bool) -> usize {
    (k + alpha(anchored)) / 2
}

/// Size of the center tree after peeling: `n - Σ_{i=1}^{2p-α} n_i`.
/// This always includes the removed center vertex and `T_0`.
pub(crate) fn center_tree_size(n: usize, sizes: &[usize], p: usize, anchored: bool) -> usize {
    let m = peeled_count(p, anchored);
    n - sizes[1..=m].iter().sum::<usize>()
}

/// The size parameter used by the cost formulas in each mode: the full
/// center-tree size in the corrected modes, or with `n_0` subtracted in the
/// as-published mode.
pub(crate) fn n_star_value(
    n: usize,
    sizes: &[usize],
    p: usize,
    anchored: bool,
    mode: FormulaMode,
) -> usize {
    let tstar = center_tree_size(n, sizes, p, anchored);
    match mode {
        FormulaMode::FixB => tstar,
        FormulaMode::FixA | FormulaMode::OriginalBug => tstar - sizes[0],
    }
}

/// The joining constant
/// `S_α = Σ_{j=2}^{p} (j-1)(n_{2j-1-α} + n_{2j-α}) + p (Z + 1) - α`:
/// the portions of the subtree-to-center edges not covered by anchor
/// lengths, plus (for anchored trees) the whole tree's own anchor.
///
/// `Z` is the center-tree size in the corrected modes; the as-published
/// mode uses the center-tree size minus `n_0`, which is the error being
/// corrected.
pub(crate) fn s_alpha_value(
    n: usize,
    sizes: &[usize],
    p: usize,
    anchored: bool,
    mode: FormulaMode,
) -> u64 {
    let a = alpha(anchored);
    let tstar = center_tree_size(n, sizes, p, anchored);
    let z = match mode {
        FormulaMode::FixA | FormulaMode::FixB => tstar,
        FormulaMode::OriginalBug => tstar - sizes[0],
    };
    let mut total = 0u64;
    for j in 2..=p {
        total += ((j - 1) * (sizes[2 * j - 1 - a] + sizes[2 * j - a])) as u64;
    }
    total + (p * (z + 1)) as u64 - a as u64
}

/// Whether pair count `p` passes the peel threshold: `n_{2p-α}` must exceed
/// `⌊(n_0+2)/2⌋` plus half of the center tree outside `T_0`. Each mode
/// states the threshold in its own `n_*` convention; the corrected forms
/// coincide numerically with the original one by construction.
pub(crate) fn inequality_holds(
    n: usize,
    sizes: &[usize],
    p: usize,
    anchored: bool,
    mode: FormulaMode,
) -> bool {
    let i = peeled_count(p, anchored);
    let n0 = sizes[0];
    let threshold = match mode {
        FormulaMode::FixB => {
            let nstar = center_tree_size(n, sizes, p, anchored);
            (n0 + 2) / 2 + (nstar - n0 + 2) / 2
        }
        FormulaMode::FixA | FormulaMode::OriginalBug => {
            let nstar = center_tree_size(n, sizes, p, anchored) - n0;
            (n0 + 2) / 2 + (nstar + 2) / 2
        }
    };
    sizes[i] > threshold
}

/// Start offset (0-based) of block `T_i` in the surrounded layout: odd
/// blocks pack leftward in order `T_1, T_3, ...`; even blocks pack
/// rightward so that `T_2` ends at position n.
pub(crate) fn left_offset_value(n: usize, sizes: &[usize], i: usize) -> usize {
    if i % 2 == 1 {
        (1..i).step_by(2).map(|j| sizes[j]).sum()
    } else {
        n - (2..=i).step_by(2).map(|j| sizes[j]).sum::<usize>()
    }
}

/// Start offset (0-based) of the center tree: after every odd peeled block.
pub(crate) fn center_tree_offset(sizes: &[usize], p: usize, anchored: bool) -> usize {
    let m = peeled_count(p, anchored);
    (1..=m).step_by(2).map(|j| sizes[j]).sum()
}

/// Pair counts worth evaluating, ascending. Under the min-over-all policy
/// this is every feasible `p`; under the inequality policy only those
/// passing the peel threshold. The as-published mode always selects by its
/// inequality, the way the original algorithm computes its pair count.
pub(crate) fn candidate_ps(
    n: usize,
    sizes: &[usize],
    anchored: bool,
    mode: FormulaMode,
    policy: PPolicy,
) -> Vec<usize> {
    let k = match sizes.len().checked_sub(1) {
        Some(k) => k,
        None => return Vec::new(),
    };
    let filter = matches!(mode, FormulaMode::OriginalBug) || matches!(policy, PPolicy::Inequality);
    (1..=max_p(k, anchored))
        .filter(|&p| !filter || inequality_holds(n, sizes, p, anchored, mode))
        .collect()
}
