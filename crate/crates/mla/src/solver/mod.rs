//! The corrected end-block / surrounded-layout solver for minimum linear
//! arrangements of trees, with three formula modes:
//!
//! - `fix-a`: keeps the original center-tree size parameter (which excludes
//!   `T_0`) and corrects the joining constant to `p (n_* + n_0 + 1) - α`;
//! - `fix-b`: redefines the size parameter to the full center-tree size and
//!   keeps the joining constant `p (n_* + 1) - α`;
//! - `original-bug`: the as-published formulas, which under-count the
//!   joining constant by `p * n_0` at every surrounded layout.
//!
//! The two corrected modes compute identical costs and always pass the
//! self-check (reported cost equals the recomputation of the returned
//! arrangement from the edge lengths); the as-published mode under-reports
//! on trees that are large and balanced enough to trigger a surrounded
//! layout, complete binary trees of five or more levels being the classic
//! family.

mod engine;
mod formulas;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{cost, Arrangement};
use crate::partition::SubtreePartition;
use crate::tree::{Tree, VertexId};

pub use engine::Solver;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("vertex {vertex} not in tree")]
    VertexNotInTree { vertex: VertexId },
    #[error("exhaustive center policy is limited to n <= {limit}, got n = {n}")]
    ExhaustiveLimit { n: usize, limit: usize },
    #[error("memo limit of {limit} distinct subproblems exceeded")]
    MemoLimit { limit: usize },
    #[error("pair count p = {p} out of range for this partition")]
    POutOfRange { p: usize },
    #[error("subtree index {index} out of range")]
    IndexOutOfRange { index: usize },
    #[error("need at least 2 vertices, got {n}")]
    TooSmall { n: usize },
    #[error("partition does not match the tree")]
    PartitionMismatch,
}

/// Which variant of the cost formulas to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaMode {
    FixA,
    FixB,
    OriginalBug,
}

impl FormulaMode {
    pub const ALL: [FormulaMode; 3] = [
        FormulaMode::FixA,
        FormulaMode::FixB,
        FormulaMode::OriginalBug,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FormulaMode::FixA => "fix-a",
            FormulaMode::FixB => "fix-b",
            FormulaMode::OriginalBug => "original-bug",
        }
    }

    /// Both corrected modes; excludes the as-published one.
    pub fn is_corrected(self) -> bool {
        !matches!(self, FormulaMode::OriginalBug)
    }
}

impl std::fmt::Display for FormulaMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FormulaMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fix-a" => Ok(FormulaMode::FixA),
            "fix-b" => Ok(FormulaMode::FixB),
            "original-bug" => Ok(FormulaMode::OriginalBug),
            other => Err(format!("unknown mode '{other}'")),
        }
    }
}

/// How the center vertex is chosen for free subproblems. Anchored
/// subproblems always use the anchored vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VstarPolicy {
    Centroid,
    Exhaustive,
}

impl std::str::FromStr for VstarPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "centroid" => Ok(VstarPolicy::Centroid),
            "exhaustive" => Ok(VstarPolicy::Exhaustive),
            other => Err(format!("unknown center policy '{other}'")),
        }
    }
}

/// How the surrounded-layout pair count is chosen: evaluate every feasible
/// p and take the minimum, or only those passing the peel inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PPolicy {
    MinOverAll,
    Inequality,
}

impl std::str::FromStr for PPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" | "min-over-all" => Ok(PPolicy::MinOverAll),
            "inequality" => Ok(PPolicy::Inequality),
            other => Err(format!("unknown p policy '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub mode: FormulaMode,
    pub vstar_policy: VstarPolicy,
    pub p_policy: PPolicy,
    /// Maximum number of distinct memoized subproblems before the solve
    /// is aborted with an error.
    pub memo_limit: usize,
    /// The exhaustive center policy is only permitted up to this size.
    pub exhaustive_limit: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mode: FormulaMode::FixB,
            vstar_policy: VstarPolicy::Centroid,
            p_policy: PPolicy::MinOverAll,
            memo_limit: 1 << 22,
            exhaustive_limit: 64,
        }
    }
}

impl SolverConfig {
    pub fn with_mode(mode: FormulaMode) -> Self {
        SolverConfig {
            mode,
            ..SolverConfig::default()
        }
    }
}

/// Start offsets of one block of a surrounded layout, as recorded in the
/// solve trace: `offset` from the layout formula, `assembled_offset`
/// measured from the arrangement that was actually built. Index 0 denotes
/// the center tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRecord {
    pub index: usize,
    pub size: usize,
    pub offset: u64,
    pub assembled_offset: u64,
}

/// Which form won at one recursion node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form")]
pub enum TraceChoice {
    #[serde(rename = "A")]
    TypeA,
    #[serde(rename = "B")]
    TypeB {
        p: usize,
        blocks: Vec<BlockRecord>,
        center_tree: BlockRecord,
    },
}

/// Per-recursion record of the chosen arrangement form, in preorder over
/// the solution structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub size: usize,
    pub anchored: bool,
    pub vstar: VertexId,
    #[serde(flatten)]
    pub choice: TraceChoice,
}

/// Outcome of a solve: the reported optimal cost, a witness arrangement,
/// the independent recomputation of that witness's cost, and the form
/// trace.
///
/// In the corrected modes `cost == recomputed_cost` always; the
/// as-published mode may report less than its own witness costs.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub cost: u64,
    pub arrangement: Arrangement,
    pub recomputed_cost: u64,
    pub mode: FormulaMode,
    pub trace: Vec<TraceRecord>,
}

impl SolveResult {
    pub fn self_check_passes(&self) -> bool {
        self.cost == self.recomputed_cost
    }
}

fn package(
    tree: &Tree,
    mode: FormulaMode,
    reported: u64,
    order: Vec<VertexId>,
    trace: Vec<TraceRecord>,
    anchor: Option<VertexId>,
) -> SolveResult {
    let arrangement =
        Arrangement::from_order(&order).expect("solver assembles a permutation of 1..=n");
    // Recompute what the reported cost claims to be: the plain edge-length
    // sum, plus the anchor length for anchored solves.
    let recomputed = match anchor {
        None => cost(tree, &arrangement).expect("witness covers the tree"),
        Some(v) => crate::arrangement::anchored_cost(
            tree,
            v,
            crate::arrangement::AnchorSide::Right,
            &arrangement,
        )
        .expect("witness covers the tree"),
    };
    SolveResult {
        cost: reported,
        arrangement,
        recomputed_cost: recomputed,
        mode,
        trace,
    }
}

/// Minimum linear arrangement of a free tree.
pub fn mla_free(tree: &Tree, config: &SolverConfig) -> Result<SolveResult, SolveError> {
    let mut solver = Solver::new(tree, config.clone())?;
    let full = solver.full_set();
    let reported = solver.free_cost(&full)?;
    let mut trace = Vec::new();
    let order = solver.build(&full, None, &mut trace);
    Ok(package(tree, config.mode, reported, order, trace, None))
}

/// Minimum cost of the tree anchored at `v` (canonically on the right;
/// the left-anchored optimum is the same value with the witness reversed).
pub fn mla_anchored(
    tree: &Tree,
    v: VertexId,
    config: &SolverConfig,
) -> Result<SolveResult, SolveError> {
    if !tree.contains(v) {
        return Err(SolveError::VertexNotInTree { vertex: v });
    }
    let mut solver = Solver::new(tree, config.clone())?;
    let full = solver.full_set();
    let reported = solver.anchored_cost(&full, v)?;
    let mut trace = Vec::new();
    let order = solver.build(&full, Some(v), &mut trace);
    Ok(package(tree, config.mode, reported, order, trace, Some(v)))
}

fn check_partition(tree: &Tree, partition: &SubtreePartition) -> Result<(), SolveError> {
    if partition.n() != tree.n() || !tree.contains(partition.center) {
        return Err(SolveError::PartitionMismatch);
    }
    Ok(())
}

/// Cost and arrangement of the end-block form for the whole tree around
/// `partition.center`: the largest subtree right-anchored on `[1, n_0]`,
/// the remainder after it.
pub fn solve_type_a(
    tree: &Tree,
    partition: &SubtreePartition,
    anchored: bool,
    solver: &mut Solver,
) -> Result<(u64, Arrangement), SolveError> {
    check_partition(tree, partition)?;
    if tree.n() < 2 {
        return Err(SolveError::TooSmall { n: tree.n() });
    }
    let (cost, order, _) = solver.forced_form(partition, anchored, None)?;
    Ok((
        cost,
        Arrangement::from_order(&order).expect("solver assembles a permutation"),
    ))
}

/// Cost and arrangement of the surrounded form with pair count `p` around
/// `partition.center`: peeled subtrees alternating left (right-anchored)
/// and right (left-anchored) of the center tree.
pub fn solve_type_b(
    tree: &Tree,
    partition: &SubtreePartition,
    anchored: bool,
    p: usize,
    solver: &mut Solver,
) -> Result<(u64, Arrangement), SolveError> {
    check_partition(tree, partition)?;
    if tree.n() < 2 {
        return Err(SolveError::TooSmall { n: tree.n() });
    }
    let (cost, order, _) = solver.forced_form(partition, anchored, Some(p))?;
    Ok((
        cost,
        Arrangement::from_order(&order).expect("solver assembles a permutation"),
    ))
}

fn validate_p(partition: &SubtreePartition, p: usize, anchored: bool) -> Result<(), SolveError> {
    let k = partition.k().ok_or(SolveError::POutOfRange { p })?;
    if p < 1 || formulas::peeled_count(p, anchored) > k {
        return Err(SolveError::POutOfRange { p });
    }
    Ok(())
}

/// The size parameter `n_*` for pair count `p` in the given mode: the full
/// center-tree size under `fix-b`, or with `n_0` excluded under `fix-a`
/// and the as-published mode.
pub fn n_star(
    partition: &SubtreePartition,
    p: usize,
    anchored: bool,
    mode: FormulaMode,
) -> Result<u64, SolveError> {
    validate_p(partition, p, anchored)?;
    Ok(formulas::n_star_value(partition.n(), &partition.sizes(), p, anchored, mode) as u64)
}

/// Whether the subtree peeled last by pair count `p` passes the mode's
/// peel inequality. All three modes agree numerically.
pub fn satisfies_p_inequality(
    partition: &SubtreePartition,
    p: usize,
    anchored: bool,
    mode: FormulaMode,
) -> Result<bool, SolveError> {
    let k = partition.k().ok_or(SolveError::IndexOutOfRange {
        index: 2 * p - anchored as usize,
    })?;
    if p < 1 || formulas::peeled_count(p, anchored) > k {
        return Err(SolveError::IndexOutOfRange {
            index: 2 * p - anchored as usize,
        });
    }
    Ok(formulas::inequality_holds(
        partition.n(),
        &partition.sizes(),
        p,
        anchored,
        mode,
    ))
}

/// Pair counts the solver will evaluate for this partition under the
/// configured policy, ascending. An empty list means the surrounded form
/// is not attempted.
pub fn p_candidates(
    partition: &SubtreePartition,
    anchored: bool,
    config: &SolverConfig,
) -> Vec<usize> {
    formulas::candidate_ps(
        partition.n(),
        &partition.sizes(),
        anchored,
        config.mode,
        config.p_policy,
    )
}

/// The joining constant `S_α` for pair count `p` in the given mode.
pub fn s_alpha(
    partition: &SubtreePartition,
    p: usize,
    anchored: bool,
    mode: FormulaMode,
) -> Result<u64, SolveError> {
    validate_p(partition, p, anchored)?;
    Ok(formulas::s_alpha_value(
        partition.n(),
        &partition.sizes(),
        p,
        anchored,
        mode,
    ))
}

/// Total size of the blocks placed to the left of peeled subtree `T_i` in
/// the surrounded layout with pair count `p` (0-based block start).
pub fn left_offset(
    partition: &SubtreePartition,
    p: usize,
    anchored: bool,
    i: usize,
) -> Result<u64, SolveError> {
    validate_p(partition, p, anchored)?;
    if i < 1 || i > formulas::peeled_count(p, anchored) {
        return Err(SolveError::IndexOutOfRange { index: i });
    }
    Ok(formulas::left_offset_value(partition.n(), &partition.sizes(), i) as u64)
}
