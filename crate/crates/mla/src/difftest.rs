//! Randomized differential testing: run one or more solver modes against
//! the exact oracles over seeded random trees, record every discrepancy,
//! and shrink each failing tree by iterative leaf deletion to a minimal
//! counterexample fixture.
//!
//! Reproducibility contract: each trial derives its own RNG stream from
//! `(seed, trial index)`, so a fixed seed and fixed options produce an
//! identical report regardless of scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generate::{generate, random_tree, GenerateError, TreeKind};
use crate::oracle::{closed_form_complete_binary, exact_mla, SUBSET_DP_MAX};
use crate::solver::{mla_free, FormulaMode, SolveError, SolverConfig};
use crate::tree::{Tree, VertexId};

#[derive(Debug, Error)]
pub enum DifftestError {
    #[error("oracle comparison requires nmax <= {max}, got {nmax}")]
    NmaxTooLarge { nmax: usize, max: usize },
    #[error("nmax must be at least 2, got {nmax}")]
    NmaxTooSmall { nmax: usize },
    #[error("at least one mode must be listed")]
    NoModes,
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone)]
pub struct DifftestOptions {
    pub trials: usize,
    pub nmax: usize,
    pub seed: u64,
    pub modes: Vec<FormulaMode>,
    /// When set, assess this single generated tree instead of random trials.
    pub generated: Option<TreeKind>,
}

impl Default for DifftestOptions {
    fn default() -> Self {
        DifftestOptions {
            trials: 100,
            nmax: 12,
            seed: 0,
            modes: vec![FormulaMode::FixA, FormulaMode::FixB],
            generated: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscrepancyKind {
    /// A mode's reported cost differs from the exact oracle.
    OracleMismatch,
    /// A mode's reported cost differs from its own witness recomputation.
    SelfCheckFailure,
    /// Two listed modes disagree with each other.
    ModeMismatch,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModeCost {
    pub mode: FormulaMode,
    pub cost: u64,
    pub recomputed_cost: u64,
}

/// One failing tree, with everything needed to reproduce it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Discrepancy {
    pub trial: usize,
    pub n: usize,
    pub kinds: Vec<DiscrepancyKind>,
    pub oracle_cost: Option<u64>,
    pub mode_costs: Vec<ModeCost>,
    pub edge_list: String,
}

/// A minimal tree (under leaf deletion) still exhibiting one of the
/// recorded discrepancy kinds, as an edge-list fixture.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: usize,
    pub n: usize,
    pub kinds: Vec<DiscrepancyKind>,
    pub edge_list: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DifftestReport {
    pub trials: usize,
    pub nmax: usize,
    pub seed: u64,
    pub modes: Vec<FormulaMode>,
    pub generated: Option<String>,
    pub trees_checked: usize,
    pub discrepancies: Vec<Discrepancy>,
    pub counterexamples: Vec<Counterexample>,
}

/// Run the differential test and shrink every failure.
pub fn run_difftest(opts: &DifftestOptions) -> Result<DifftestReport, DifftestError> {
    if opts.modes.is_empty() {
        return Err(DifftestError::NoModes);
    }
    let mut report = DifftestReport {
        trials: opts.trials,
        nmax: opts.nmax,
        seed: opts.seed,
        modes: opts.modes.clone(),
        generated: opts.generated.as_ref().map(|k| k.to_string()),
        trees_checked: 0,
        discrepancies: Vec::new(),
        counterexamples: Vec::new(),
    };

    if let Some(kind) = &opts.generated {
        let tree = generate(kind, opts.seed)?;
        let oracle_cost = oracle_for_generated(kind, &tree)?;
        assess_and_record(&tree, 0, oracle_cost, opts, &mut report)?;
        report.trees_checked = 1;
        return Ok(report);
    }

    if opts.nmax > SUBSET_DP_MAX {
        return Err(DifftestError::NmaxTooLarge {
            nmax: opts.nmax,
            max: SUBSET_DP_MAX,
        });
    }
    if opts.nmax < 2 {
        return Err(DifftestError::NmaxTooSmall { nmax: opts.nmax });
    }
    for trial in 0..opts.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(trial as u64 + 1);
        let n = rng.gen_range(2..=opts.nmax);
        let tree = random_tree(n, &mut rng);
        let oracle_cost = Some(exact_mla(&tree).expect("n <= 24").cost);
        assess_and_record(&tree, trial, oracle_cost, opts, &mut report)?;
        report.trees_checked += 1;
    }
    Ok(report)
}

fn oracle_for_generated(kind: &TreeKind, tree: &Tree) -> Result<Option<u64>, DifftestError> {
    if tree.n() <= SUBSET_DP_MAX {
        return Ok(Some(exact_mla(tree).expect("within dp bound").cost));
    }
    if let TreeKind::CompleteBinary { levels } = kind {
        if let Ok(v) = closed_form_complete_binary(*levels) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

fn assess_and_record(
    tree: &Tree,
    trial: usize,
    oracle_cost: Option<u64>,
    opts: &DifftestOptions,
    report: &mut DifftestReport,
) -> Result<(), DifftestError> {
    let (mode_costs, kinds) = assess(tree, &opts.modes, oracle_cost)?;
    if kinds.is_empty() {
        return Ok(());
    }
    report.discrepancies.push(Discrepancy {
        trial,
        n: tree.n(),
        kinds: kinds.clone(),
        oracle_cost,
        mode_costs,
        edge_list: tree.to_edge_list(),
    });
    let shrunk = shrink_tree(tree, |candidate| {
        let oracle = if candidate.n() <= SUBSET_DP_MAX {
            Some(exact_mla(candidate).expect("within dp bound").cost)
        } else {
            None
        };
        match assess(candidate, &opts.modes, oracle) {
            Ok((_, candidate_kinds)) => kinds.iter().any(|k| candidate_kinds.contains(k)),
            Err(_) => false,
        }
    });
    let (_, final_kinds) = assess(
        &shrunk,
        &opts.modes,
        if shrunk.n() <= SUBSET_DP_MAX {
            Some(exact_mla(&shrunk).expect("within dp bound").cost)
        } else {
            None
        },
    )?;
    report.counterexamples.push(Counterexample {
        trial,
        n: shrunk.n(),
        kinds: final_kinds,
        edge_list: shrunk.to_edge_list(),
    });
    Ok(())
}

/// Solve `tree` in each mode and classify the mismatches.
fn assess(
    tree: &Tree,
    modes: &[FormulaMode],
    oracle_cost: Option<u64>,
) -> Result<(Vec<ModeCost>, Vec<DiscrepancyKind>), SolveError> {
    let mut mode_costs = Vec::with_capacity(modes.len());
    let mut kinds = Vec::new();
    for &mode in modes {
        let r = mla_free(tree, &SolverConfig::with_mode(mode))?;
        if r.cost != r.recomputed_cost && !kinds.contains(&DiscrepancyKind::SelfCheckFailure) {
            kinds.push(DiscrepancyKind::SelfCheckFailure);
        }
        if let Some(oracle) = oracle_cost {
            if r.cost != oracle && !kinds.contains(&DiscrepancyKind::OracleMismatch) {
                kinds.push(DiscrepancyKind::OracleMismatch);
            }
        }
        mode_costs.push(ModeCost {
            mode,
            cost: r.cost,
            recomputed_cost: r.recomputed_cost,
        });
    }
    if mode_costs.windows(2).any(|w| w[0].cost != w[1].cost) {
        kinds.push(DiscrepancyKind::ModeMismatch);
    }
    kinds.sort();
    Ok((mode_costs, kinds))
}

/// Greedily delete leaves (smallest id first, relabeling to keep ids
/// contiguous) while `exhibits` stays true on the candidate. The result
/// still exhibits the property and no single further leaf deletion does.
pub fn shrink_tree(tree: &Tree, exhibits: impl Fn(&Tree) -> bool) -> Tree {
    let mut current = tree.clone();
    'outer: loop {
        let leaves: Vec<VertexId> = current
            .vertices()
            .filter(|&v| current.degree(v) == 1)
            .collect();
        for leaf in leaves {
            let candidate = delete_leaf(&current, leaf);
            if exhibits(&candidate) {
                current = candidate;
                continue 'outer;
            }
        }
        return current;
    }
}

/// Remove a leaf and compact the remaining ids back onto `1..=n-1`.
pub fn delete_leaf(tree: &Tree, leaf: VertexId) -> Tree {
    debug_assert_eq!(tree.degree(leaf), 1);
    let relabel = |v: VertexId| if v > leaf { v - 1 } else { v };
    let edges = tree
        .edges()
        .iter()
        .filter(|&&(u, v)| u != leaf && v != leaf)
        .map(|&(u, v)| (relabel(u), relabel(v)));
    Tree::new(tree.n() - 1, edges).expect("leaf deletion preserves treeness")
}
