//! Exact minimum linear arrangement (MLA) solver for undirected trees.
//!
//! A linear arrangement places the n vertices of a tree on positions
//! `1..=n`; the cost is the sum over edges of the distance between their
//! endpoints. This crate finds the exact minimum with a decomposition
//! solver built from anchored subtrees, validates it against independent
//! exact oracles, and can also reproduce a well-known historical
//! formula bug in the decomposition's joining constant for study and
//! differential testing.
//!
//! # Modules
//!
//! - [`tree`] — labeled trees and the edge-list text format
//! - [`arrangement`] — arrangements, free and anchored cost, shift/reverse
//! - [`partition`] — center removal and centroid selection
//! - [`generate`](mod@generate) — tree families, seeded random trees,
//!   exhaustive enumeration via Prüfer sequences
//! - [`solver`] — the decomposition solver with its three formula modes
//! - [`oracle`] — subset-DP and brute-force exact solvers, closed form for
//!   complete binary trees
//! - [`report`] — the command drivers and their JSON report schema
//! - [`difftest`] — randomized differential testing with counterexample
//!   shrinking
//!
//! # Quick start
//!
//! ```
//! use mla::{generate, mla_free, SolverConfig, TreeKind};
//!
//! let tree = generate(&TreeKind::CompleteBinary { levels: 5 }, 0).unwrap();
//! let result = mla_free(&tree, &SolverConfig::default()).unwrap();
//! assert_eq!(result.cost, 60);
//! assert!(result.self_check_passes());
//! ```
//!
//! # Examples
//!
//! One runnable example per capability:
//!
//! ```bash
//! cargo run --example solve_tree            # solve a generated or parsed tree
//! cargo run --example generate_trees        # the tree families and fixtures
//! cargo run --example bug_demo              # corrected vs as-published modes
//! cargo run --example oracle_crosscheck     # solver vs exact oracles
//! cargo run --example enumerate_small       # all labeled trees on n vertices
//! cargo run --example difftest_shrink       # differential testing + shrinking
//! ```
//!
//! The `mla` binary exposes the same capabilities as subcommands
//! (`solve`, `check`, `difftest`, `bugdemo`); see the README.

pub mod arrangement;
pub mod difftest;
pub mod generate;
pub mod oracle;
pub mod partition;
pub mod report;
pub mod solver;
pub mod tree;

pub use arrangement::{anchored_cost, cost, AnchorSide, Arrangement, ArrangementError};
pub use generate::{generate, labeled_trees, random_tree, GenerateError, TreeKind};
pub use oracle::{
    closed_form_complete_binary, exact_anchored_mla, exact_mla, OracleError, OracleMethod,
    OracleResult,
};
pub use partition::{centroid, remove_center, PartitionError, Subtree, SubtreePartition};
pub use solver::{
    left_offset, mla_anchored, mla_free, n_star, p_candidates, s_alpha, satisfies_p_inequality,
    solve_type_a, solve_type_b, FormulaMode, PPolicy, SolveError, SolveResult, Solver,
    SolverConfig, TraceChoice, TraceRecord, VstarPolicy,
};
pub use tree::{Tree, TreeError, VertexId};
