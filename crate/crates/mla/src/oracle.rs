//! Independent exact solvers used as ground truth: a bitmask subset DP
//! (n <= 24), brute-force enumeration of all n! arrangements (n <= 9), and
//! the closed-form optimum for complete binary trees.
//!
//! The subset DP uses the prefix-cut identity: the total edge length of an
//! arrangement equals the sum, over the n - 1 proper prefixes of the
//! ordering, of the number of edges crossing the prefix boundary. An
//! anchor at vertex w adds one more crossing for every prefix that
//! separates w from the anchor side.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{cost, AnchorSide, Arrangement};
use crate::tree::{Tree, VertexId};

/// Largest instance the subset DP accepts (2^24 table entries).
pub const SUBSET_DP_MAX: usize = 24;
/// Largest instance full enumeration accepts (9! arrangements).
pub const FACTORIAL_MAX: usize = 9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{method} oracle supports n <= {max}, got n = {n}")]
    TooLarge {
        method: &'static str,
        max: usize,
        n: usize,
    },
    #[error("vertex {vertex} not in tree")]
    VertexNotInTree { vertex: VertexId },
    #[error("closed form requires levels >= 2, got {levels}")]
    LevelsOutOfRange { levels: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMethod {
    SubsetDp,
    Factorial,
}

/// Exact optimum with a witness arrangement that recomputes to the cost.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub cost: u64,
    pub arrangement: Arrangement,
    pub method: OracleMethod,
}

/// Exact minimum linear arrangement via the subset DP.
pub fn exact_mla(tree: &Tree) -> Result<OracleResult, OracleError> {
    exact_mla_with(tree, OracleMethod::SubsetDp)
}

pub fn exact_mla_with(tree: &Tree, method: OracleMethod) -> Result<OracleResult, OracleError> {
    solve(tree, None, method)
}

/// Exact minimum over all arrangements of the anchored cost
/// (`n - pos(v)` for a right anchor, `pos(v) - 1` for a left one).
pub fn exact_anchored_mla(
    tree: &Tree,
    v: VertexId,
    side: AnchorSide,
) -> Result<OracleResult, OracleError> {
    exact_anchored_mla_with(tree, v, side, OracleMethod::SubsetDp)
}

pub fn exact_anchored_mla_with(
    tree: &Tree,
    v: VertexId,
    side: AnchorSide,
    method: OracleMethod,
) -> Result<OracleResult, OracleError> {
    if !tree.contains(v) {
        return Err(OracleError::VertexNotInTree { vertex: v });
    }
    solve(tree, Some((v, side)), method)
}

fn solve(
    tree: &Tree,
    anchor: Option<(VertexId, AnchorSide)>,
    method: OracleMethod,
) -> Result<OracleResult, OracleError> {
    let n = tree.n();
    match method {
        OracleMethod::SubsetDp => {
            if n > SUBSET_DP_MAX {
                return Err(OracleError::TooLarge {
                    method: "subset_dp",
                    max: SUBSET_DP_MAX,
                    n,
                });
            }
            Ok(subset_dp(tree, anchor))
        }
        OracleMethod::Factorial => {
            if n > FACTORIAL_MAX {
                return Err(OracleError::TooLarge {
                    method: "factorial",
                    max: FACTORIAL_MAX,
                    n,
                });
            }
            Ok(factorial_search(tree, anchor))
        }
    }
}

fn subset_dp(tree: &Tree, anchor: Option<(VertexId, AnchorSide)>) -> OracleResult {
    let n = tree.n();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let adj: Vec<u32> = (1..=n as VertexId)
        .map(|v| {
            tree.neighbors(v)
                .iter()
                .fold(0u32, |m, &w| m | (1 << (w - 1)))
        })
        .collect();

    // cut[s] = edges between s and its complement; fits in u8 for n <= 24.
    let mut cut = vec![0u8; (full as usize) + 1];
    for s in 1..=full {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let inside = (adj[low] & rest).count_ones() as i32;
        let deg = adj[low].count_ones() as i32;
        cut[s as usize] = (cut[rest as usize] as i32 + deg - 2 * inside) as u8;
    }

    // Prefix increment: cut plus one if the prefix separates the anchored
    // vertex from its anchor. A right anchor crosses every prefix that
    // already contains w; a left anchor every prefix that does not.
    let anchor_bit = anchor.map(|(v, side)| (1u32 << (v - 1), side));
    let increment = |s: u32| -> u32 {
        let mut h = cut[s as usize] as u32;
        if let Some((bit, side)) = anchor_bit {
            let crossed = match side {
                AnchorSide::Right => s & bit != 0,
                AnchorSide::Left => s & bit == 0,
            };
            if crossed {
                h += 1;
            }
        }
        h
    };

    let mut dp = vec![u16::MAX; (full as usize) + 1];
    let mut last = vec![0u8; (full as usize) + 1];
    dp[0] = 0;
    for s in 1..=full {
        let h = if s == full { 0 } else { increment(s) };
        let mut best = u16::MAX;
        let mut best_v = 0u8;
        let mut rem = s;
        while rem != 0 {
            let v = rem.trailing_zeros() as u8;
            rem &= rem - 1;
            let prev = dp[(s & !(1u32 << v)) as usize];
            if prev < best {
                best = prev;
                best_v = v;
            }
        }
        dp[s as usize] = best + h as u16;
        last[s as usize] = best_v;
    }

    let mut order = vec![0 as VertexId; n];
    let mut s = full;
    for i in (0..n).rev() {
        let v = last[s as usize];
        order[i] = v as VertexId + 1;
        s &= !(1u32 << v);
    }
    let arrangement = Arrangement::from_order(&order).unwrap();
    OracleResult {
        cost: dp[full as usize] as u64,
        arrangement,
        method: OracleMethod::SubsetDp,
    }
}

fn factorial_search(tree: &Tree, anchor: Option<(VertexId, AnchorSide)>) -> OracleResult {
    let n = tree.n();
    let mut best: Option<(u64, Vec<VertexId>)> = None;
    for perm in (1..=n as VertexId).permutations(n) {
        let arr = Arrangement::from_order(&perm).unwrap();
        let mut c = cost(tree, &arr).unwrap();
        if let Some((v, side)) = anchor {
            let p = arr.position_of(v).unwrap();
            c += match side {
                AnchorSide::Right => (n as i64 - p) as u64,
                AnchorSide::Left => (p - 1) as u64,
            };
        }
        if best.as_ref().is_none_or(|(b, _)| c < *b) {
            best = Some((c, perm));
        }
    }
    let (cost, order) = best.unwrap();
    OracleResult {
        cost,
        arrangement: Arrangement::from_order(&order).unwrap(),
        method: OracleMethod::Factorial,
    }
}

/// Closed-form optimum for the complete binary tree of `levels` levels,
/// evaluated exactly over the common denominator 18:
/// `(2^k (6k + 5) + 4 (-1)^k - 36) / 18`.
///
/// Rejects `levels <= 1`: the formula evaluates to -1 at one level while a
/// single vertex trivially has optimum 0.
pub fn closed_form_complete_binary(levels: u32) -> Result<u64, OracleError> {
    if levels < 2 {
        return Err(OracleError::LevelsOutOfRange { levels });
    }
    let k = levels as i128;
    let sign = if levels.is_multiple_of(2) { 4 } else { -4 };
    let numerator = (1i128 << k) * (6 * k + 5) + sign - 36;
    assert!(
        numerator % 18 == 0,
        "closed form must be integral, got {numerator}/18"
    );
    Ok((numerator / 18) as u64)
}
