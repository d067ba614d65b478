//! Linear arrangements: bijections from vertices onto a contiguous integer
//! interval, the two cost evaluators (free and anchored), and the shift and
//! reversal transforms.
//!
//! A standard arrangement maps onto `[1, n]`. Shifting by `a` produces an
//! arrangement onto `[1 - a, n - a]`; the free cost is invariant under
//! shifts, while the anchored cost picks up an exact `+a` offset.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tree::{Tree, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("arrangement is empty")]
    Empty,
    #[error("arrangement lists {actual} vertices, expected {expected}")]
    WrongLength { expected: usize, actual: usize },
    #[error("duplicate vertex {vertex} in arrangement")]
    DuplicateVertex { vertex: VertexId },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u64, n: usize },
    #[error("arrangement covers {arrangement} vertices but the tree has {tree}")]
    VertexSetMismatch { tree: usize, arrangement: usize },
    #[error("vertex {vertex} not in tree")]
    VertexNotInTree { vertex: VertexId },
    #[error("operation requires a standard arrangement, base is {base}")]
    NonStandardBase { base: i64 },
    #[error("malformed arrangement line")]
    Malformed,
}

/// Which side a virtual anchor sits on: before position 1 (left) or after
/// position n (right).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AnchorSide {
    Left,
    Right,
}

impl AnchorSide {
    pub fn reversed(self) -> AnchorSide {
        match self {
            AnchorSide::Left => AnchorSide::Right,
            AnchorSide::Right => AnchorSide::Left,
        }
    }
}

/// A bijection from vertices `1..=n` onto the interval `[1 - base, n - base]`.
///
/// `base == 0` is the standard case. The inverse mapping is kept alongside,
/// so `vertex_at(position_of(v)) == v` always holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    base: i64,
    /// pos[v - 1] = position of vertex v.
    pos: Vec<i64>,
    /// inv[i] = vertex at position (1 - base) + i.
    inv: Vec<VertexId>,
}

impl Arrangement {
    /// Build a standard arrangement from vertices listed in position order
    /// (the inverse representation). Must be a permutation of `1..=n`.
    pub fn from_order(order: &[VertexId]) -> Result<Self, ArrangementError> {
        let n = order.len();
        if n == 0 {
            return Err(ArrangementError::Empty);
        }
        let mut pos = vec![0i64; n];
        let mut seen = vec![false; n];
        for (i, &v) in order.iter().enumerate() {
            if v == 0 || (v as usize) > n {
                return Err(ArrangementError::VertexOutOfRange {
                    vertex: v as u64,
                    n,
                });
            }
            if seen[(v - 1) as usize] {
                return Err(ArrangementError::DuplicateVertex { vertex: v });
            }
            seen[(v - 1) as usize] = true;
            pos[(v - 1) as usize] = (i + 1) as i64;
        }
        Ok(Arrangement {
            base: 0,
            pos,
            inv: order.to_vec(),
        })
    }

    /// The identity arrangement: vertex v at position v.
    pub fn identity(n: usize) -> Result<Self, ArrangementError> {
        let order: Vec<VertexId> = (1..=n as VertexId).collect();
        Arrangement::from_order(&order)
    }

    /// Parse the one-line arrangement format: `n` space-separated vertex ids
    /// in position order.
    pub fn parse(text: &str) -> Result<Self, ArrangementError> {
        let line = text.trim_end_matches('\n').trim_end_matches('\r');
        if line.is_empty() {
            return Err(ArrangementError::Empty);
        }
        let mut order = Vec::new();
        for token in line.split(' ') {
            if token.is_empty() {
                return Err(ArrangementError::Malformed);
            }
            let v: u64 = token.parse().map_err(|_| ArrangementError::Malformed)?;
            if v == 0 || v > u32::MAX as u64 {
                return Err(ArrangementError::VertexOutOfRange {
                    vertex: v,
                    n: order.len(),
                });
            }
            order.push(v as VertexId);
        }
        Arrangement::from_order(&order)
    }

    pub fn n(&self) -> usize {
        self.pos.len()
    }

    /// The offset `a`: positions lie in `[1 - a, n - a]`.
    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn is_standard(&self) -> bool {
        self.base == 0
    }

    /// Position of vertex `v`.
    pub fn position_of(&self, v: VertexId) -> Result<i64, ArrangementError> {
        if v == 0 || (v as usize) > self.pos.len() {
            return Err(ArrangementError::VertexOutOfRange {
                vertex: v as u64,
                n: self.pos.len(),
            });
        }
        Ok(self.pos[(v - 1) as usize])
    }

    /// Vertex at position `p`, if `p` is inside the interval.
    pub fn vertex_at(&self, p: i64) -> Option<VertexId> {
        let idx = p - (1 - self.base);
        if idx < 0 || idx as usize >= self.inv.len() {
            return None;
        }
        Some(self.inv[idx as usize])
    }

    /// Vertices in position order.
    pub fn order(&self) -> &[VertexId] {
        &self.inv
    }

    /// Shifted arrangement: base increased by `a`, every position reduced
    /// by `a`. Bijectivity onto a contiguous interval is preserved.
    pub fn shift(&self, a: i64) -> Arrangement {
        Arrangement {
            base: self.base + a,
            pos: self.pos.iter().map(|p| p - a).collect(),
            inv: self.inv.clone(),
        }
    }

    /// Mirror a standard arrangement: position p becomes n + 1 - p.
    pub fn reverse(&self) -> Result<Arrangement, ArrangementError> {
        if self.base != 0 {
            return Err(ArrangementError::NonStandardBase { base: self.base });
        }
        let n = self.pos.len() as i64;
        let pos = self.pos.iter().map(|p| n + 1 - p).collect();
        let inv = self.inv.iter().rev().copied().collect();
        Ok(Arrangement { base: 0, pos, inv })
    }

    /// Render the one-line arrangement format (no trailing newline).
    pub fn to_line(&self) -> String {
        self.inv
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Total edge length of `tree` under `arr`: the sum over edges of
/// `|pos(u) - pos(v)|`. Shift-invariant.
pub fn cost(tree: &Tree, arr: &Arrangement) -> Result<u64, ArrangementError> {
    if tree.n() != arr.n() {
        return Err(ArrangementError::VertexSetMismatch {
            tree: tree.n(),
            arrangement: arr.n(),
        });
    }
    let mut total = 0u64;
    for &(u, v) in tree.edges() {
        let d = arr.pos[(u - 1) as usize] - arr.pos[(v - 1) as usize];
        total += d.unsigned_abs();
    }
    Ok(total)
}

/// Cost of `tree` with a virtual anchor attached at `v`.
///
/// Requires a standard arrangement. The anchor adds `n - pos(v)` on the
/// right side and `pos(v) - 1` on the left.
pub fn anchored_cost(
    tree: &Tree,
    v: VertexId,
    side: AnchorSide,
    arr: &Arrangement,
) -> Result<u64, ArrangementError> {
    if !tree.contains(v) {
        return Err(ArrangementError::VertexNotInTree { vertex: v });
    }
    if arr.base != 0 {
        return Err(ArrangementError::NonStandardBase { base: arr.base });
    }
    let free = cost(tree, arr)?;
    let p = arr.position_of(v)?;
    let anchor = match side {
        AnchorSide::Right => arr.n() as i64 - p,
        AnchorSide::Left => p - 1,
    };
    Ok(free + anchor as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Tree {
        Tree::new(n, (1..n as VertexId).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn cost_of_identity_path() {
        let t = path(3);
        let arr = Arrangement::identity(3).unwrap();
        assert_eq!(cost(&t, &arr).unwrap(), 2);
    }

    #[test]
    fn cost_star_example() {
        // center 2 with leaves 1, 3, 4 at positions (2->2, 1->1, 3->3, 4->4)
        let t = Tree::new(4, vec![(2, 1), (2, 3), (2, 4)]).unwrap();
        let arr = Arrangement::identity(4).unwrap();
        assert_eq!(cost(&t, &arr).unwrap(), 1 + 1 + 2);
    }

    #[test]
    fn cost_single_vertex_is_zero() {
        let t = Tree::new(1, vec![]).unwrap();
        let arr = Arrangement::identity(1).unwrap();
        assert_eq!(cost(&t, &arr).unwrap(), 0);
    }

    #[test]
    fn cost_rejects_mismatched_sizes() {
        let t = path(3);
        let arr = Arrangement::identity(4).unwrap();
        assert_eq!(
            cost(&t, &arr).unwrap_err(),
            ArrangementError::VertexSetMismatch {
                tree: 3,
                arrangement: 4
            }
        );
    }

    #[test]
    fn anchored_cost_examples() {
        let t = path(2);
        let ab = Arrangement::from_order(&[1, 2]).unwrap();
        let ba = Arrangement::from_order(&[2, 1]).unwrap();
        // anchor right at vertex 1
        assert_eq!(anchored_cost(&t, 1, AnchorSide::Right, &ab).unwrap(), 2);
        assert_eq!(anchored_cost(&t, 1, AnchorSide::Right, &ba).unwrap(), 1);
        // left anchor at the first position adds nothing
        assert_eq!(
            anchored_cost(&t, 1, AnchorSide::Left, &ab).unwrap(),
            cost(&t, &ab).unwrap()
        );
    }

    #[test]
    fn anchored_cost_rejects_shifted() {
        let t = path(2);
        let arr = Arrangement::identity(2).unwrap().shift(1);
        assert_eq!(
            anchored_cost(&t, 1, AnchorSide::Right, &arr).unwrap_err(),
            ArrangementError::NonStandardBase { base: 1 }
        );
    }

    #[test]
    fn shift_moves_positions() {
        let arr = Arrangement::from_order(&[2, 1, 3]).unwrap();
        let shifted = arr.shift(1);
        assert_eq!(shifted.base(), 1);
        assert_eq!(shifted.position_of(1).unwrap(), 1); // was 2
        assert_eq!(shifted.position_of(2).unwrap(), 0); // was 1
        assert_eq!(shifted.vertex_at(0), Some(2));
        assert_eq!(arr.shift(0), arr);
        assert_eq!(shifted.shift(-1), arr);
    }

    #[test]
    fn reverse_is_an_involution_and_preserves_cost() {
        let t = path(3);
        let arr = Arrangement::from_order(&[2, 3, 1]).unwrap();
        let rev = arr.reverse().unwrap();
        assert_eq!(rev.order(), &[1, 3, 2]);
        assert_eq!(rev.reverse().unwrap(), arr);
        assert_eq!(cost(&t, &arr).unwrap(), cost(&t, &rev).unwrap());
    }

    #[test]
    fn reverse_rejects_shifted() {
        let arr = Arrangement::identity(3).unwrap().shift(2);
        assert!(matches!(
            arr.reverse(),
            Err(ArrangementError::NonStandardBase { base: 2 })
        ));
    }

    #[test]
    fn parse_round_trip_and_validation() {
        let arr = Arrangement::parse("2 1 3").unwrap();
        assert_eq!(arr.order(), &[2, 1, 3]);
        assert_eq!(arr.to_line(), "2 1 3");
        assert_eq!(
            Arrangement::parse("1 1 3").unwrap_err(),
            ArrangementError::DuplicateVertex { vertex: 1 }
        );
        assert_eq!(
            Arrangement::parse("1 4").unwrap_err(),
            ArrangementError::VertexOutOfRange { vertex: 4, n: 2 }
        );
    }
}
