//! Tree generators: canonical families (paths, stars, caterpillars,
//! complete binary and k-ary trees) and seeded uniform random trees via
//! Prüfer sequences, plus exhaustive enumeration of all labeled trees.
//!
//! Output is deterministic for a fixed `(kind, params, seed)`: canonical
//! families use breadth-first labeling from the root (left-to-right for
//! paths), random trees decode a seeded uniform Prüfer sequence.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::tree::{Tree, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("invalid parameter for {kind}: {reason}")]
    InvalidParams { kind: &'static str, reason: String },
    #[error("unrecognized tree spec '{spec}'")]
    BadSpec { spec: String },
}

/// A tree family plus its parameters, e.g. `path:5` or `complete-binary:4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeKind {
    Path {
        n: usize,
    },
    Star {
        n: usize,
    },
    /// Spine of `spine` vertices, `legs` leaves on each spine vertex.
    Caterpillar {
        spine: usize,
        legs: usize,
    },
    /// `levels` levels, `2^levels - 1` vertices.
    CompleteBinary {
        levels: u32,
    },
    CompleteKary {
        arity: usize,
        levels: u32,
    },
    RandomPrufer {
        n: usize,
    },
}

impl TreeKind {
    pub fn is_random(&self) -> bool {
        matches!(self, TreeKind::RandomPrufer { .. })
    }
}

impl fmt::Display for TreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeKind::Path { n } => write!(f, "path:{n}"),
            TreeKind::Star { n } => write!(f, "star:{n}"),
            TreeKind::Caterpillar { spine, legs } => write!(f, "caterpillar:{spine},{legs}"),
            TreeKind::CompleteBinary { levels } => write!(f, "complete-binary:{levels}"),
            TreeKind::CompleteKary { arity, levels } => {
                write!(f, "complete-kary:{arity},{levels}")
            }
            TreeKind::RandomPrufer { n } => write!(f, "random-prufer:{n}"),
        }
    }
}

impl FromStr for TreeKind {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GenerateError::BadSpec {
            spec: s.to_string(),
        };
        let (name, params) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<usize> = params
            .split(',')
            .map(|p| p.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        match (name, nums.as_slice()) {
            ("path", [n]) => Ok(TreeKind::Path { n: *n }),
            ("star", [n]) => Ok(TreeKind::Star { n: *n }),
            ("caterpillar", [spine, legs]) => Ok(TreeKind::Caterpillar {
                spine: *spine,
                legs: *legs,
            }),
            ("complete-binary", [levels]) => Ok(TreeKind::CompleteBinary {
                levels: *levels as u32,
            }),
            ("complete-kary", [arity, levels]) => Ok(TreeKind::CompleteKary {
                arity: *arity,
                levels: *levels as u32,
            }),
            ("random-prufer", [n]) => Ok(TreeKind::RandomPrufer { n: *n }),
            _ => Err(bad()),
        }
    }
}

/// Generate the tree for `kind`. The seed only matters for random kinds.
pub fn generate(kind: &TreeKind, seed: u64) -> Result<Tree, GenerateError> {
    match *kind {
        TreeKind::Path { n } => {
            require(n >= 1, "path", "n must be >= 1")?;
            Ok(Tree::new(n, (1..n as VertexId).map(|i| (i, i + 1))).unwrap())
        }
        TreeKind::Star { n } => {
            require(n >= 1, "star", "n must be >= 1")?;
            Ok(Tree::new(n, (2..=n as VertexId).map(|i| (1, i))).unwrap())
        }
        TreeKind::Caterpillar { spine, legs } => {
            require(spine >= 1, "caterpillar", "spine must be >= 1")?;
            let n = spine * (legs + 1);
            let mut edges: Vec<(VertexId, VertexId)> =
                (1..spine as VertexId).map(|i| (i, i + 1)).collect();
            for i in 0..spine {
                for j in 0..legs {
                    let leaf = spine + i * legs + j + 1;
                    edges.push(((i + 1) as VertexId, leaf as VertexId));
                }
            }
            Ok(Tree::new(n, edges).unwrap())
        }
        TreeKind::CompleteBinary { levels } => {
            require(levels >= 1, "complete-binary", "levels must be >= 1")?;
            require(levels <= 31, "complete-binary", "levels must be <= 31")?;
            let n = (1usize << levels) - 1;
            let edges = (2..=n as VertexId).map(|i| (i / 2, i));
            Ok(Tree::new(n, edges).unwrap())
        }
        TreeKind::CompleteKary { arity, levels } => {
            require(arity >= 2, "complete-kary", "arity must be >= 2")?;
            require(levels >= 1, "complete-kary", "levels must be >= 1")?;
            let mut n: usize = 0;
            let mut layer: usize = 1;
            for _ in 0..levels {
                n = n
                    .checked_add(layer)
                    .filter(|&m| m <= 1 << 22)
                    .ok_or_else(|| GenerateError::InvalidParams {
                        kind: "complete-kary",
                        reason: "tree too large".to_string(),
                    })?;
                layer *= arity;
            }
            // children of vertex i are arity*(i-1)+2 ..= arity*(i-1)+arity+1
            let edges = (2..=n as VertexId).map(|i| {
                let parent = (i as usize - 2) / arity + 1;
                (parent as VertexId, i)
            });
            Ok(Tree::new(n, edges).unwrap())
        }
        TreeKind::RandomPrufer { n } => {
            require(n >= 1, "random-prufer", "n must be >= 1")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(random_tree(n, &mut rng))
        }
    }
}

fn require(cond: bool, kind: &'static str, reason: &str) -> Result<(), GenerateError> {
    if cond {
        Ok(())
    } else {
        Err(GenerateError::InvalidParams {
            kind,
            reason: reason.to_string(),
        })
    }
}

/// Uniform random labeled tree on `n` vertices from the given RNG.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> Tree {
    if n <= 2 {
        return trivial_tree(n);
    }
    let seq: Vec<VertexId> = (0..n - 2)
        .map(|_| rng.gen_range(1..=n as VertexId))
        .collect();
    decode_prufer(&seq, n).unwrap()
}

fn trivial_tree(n: usize) -> Tree {
    match n {
        1 => Tree::new(1, vec![]).unwrap(),
        2 => Tree::new(2, vec![(1, 2)]).unwrap(),
        _ => unreachable!(),
    }
}

/// Decode a Prüfer sequence of length `n - 2` into the corresponding
/// labeled tree on `1..=n`. Every labeled tree corresponds to exactly one
/// sequence.
pub fn decode_prufer(seq: &[VertexId], n: usize) -> Result<Tree, GenerateError> {
    if n < 1 {
        return Err(GenerateError::InvalidParams {
            kind: "prufer",
            reason: "n must be >= 1".to_string(),
        });
    }
    if n <= 2 {
        if !seq.is_empty() {
            return Err(GenerateError::InvalidParams {
                kind: "prufer",
                reason: format!("sequence must be empty for n = {n}"),
            });
        }
        return Ok(trivial_tree(n));
    }
    if seq.len() != n - 2 {
        return Err(GenerateError::InvalidParams {
            kind: "prufer",
            reason: format!("sequence length {} != n - 2 = {}", seq.len(), n - 2),
        });
    }
    let mut degree = vec![1u32; n + 1];
    for &x in seq {
        if x == 0 || x as usize > n {
            return Err(GenerateError::InvalidParams {
                kind: "prufer",
                reason: format!("label {x} out of range"),
            });
        }
        degree[x as usize] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // `ptr` scans for the smallest leaf; `leaf` may dip below it when a
    // removal creates a smaller leaf.
    let mut ptr: usize = 1;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf as VertexId, x));
        degree[x as usize] -= 1;
        if degree[x as usize] == 1 && (x as usize) < ptr {
            leaf = x as usize;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf as VertexId, n as VertexId));
    Ok(Tree::new(n, edges).unwrap())
}

/// Iterator over every labeled tree on `n` vertices, in Prüfer-sequence
/// order. Yields `n^(n-2)` trees for `n >= 2` and a single tree for `n = 1`.
pub fn labeled_trees(n: usize) -> LabeledTrees {
    LabeledTrees {
        n,
        seq: vec![1; n.saturating_sub(2)],
        done: n == 0,
    }
}

pub struct LabeledTrees {
    n: usize,
    seq: Vec<VertexId>,
    done: bool,
}

impl Iterator for LabeledTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.done {
            return None;
        }
        let tree = decode_prufer(&self.seq, self.n).unwrap();
        // Odometer increment over [1, n]^(n-2).
        let mut i = self.seq.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if (self.seq[i] as usize) < self.n {
                self.seq[i] += 1;
                for s in &mut self.seq[i + 1..] {
                    *s = 1;
                }
                break;
            }
        }
        Some(tree)
    }
}
