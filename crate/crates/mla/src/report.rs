//! Command drivers and the JSON run-report schema shared by the CLI.
//!
//! Every command produces a [`RunReport`] with stable field names; unused
//! sections serialize as `null`. The `wall_ms` field is the only one
//! excluded from the determinism guarantees.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::AnchorSide;
use crate::arrangement::{cost, Arrangement, ArrangementError};
use crate::difftest::{run_difftest, DifftestError, DifftestOptions, DifftestReport};
use crate::generate::GenerateError;
use crate::oracle::{exact_anchored_mla, exact_mla, OracleError, OracleMethod, SUBSET_DP_MAX};
use crate::solver::{
    mla_anchored, mla_free, FormulaMode, PPolicy, SolveError, SolverConfig, TraceRecord,
    VstarPolicy,
};
use crate::tree::{Tree, TreeError, VertexId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_SELF_CHECK_FAILED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Difftest(#[from] DifftestError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelfCheck {
    Pass,
    Fail,
}

impl SelfCheck {
    fn from_costs(reported: u64, recomputed: u64) -> Self {
        if reported == recomputed {
            SelfCheck::Pass
        } else {
            SelfCheck::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == SelfCheck::Pass
    }
}

impl std::fmt::Display for SelfCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SelfCheck::Pass => "pass",
            SelfCheck::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeSummary {
    pub n: usize,
    pub kind: String,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModeReport {
    pub mode: FormulaMode,
    pub cost: u64,
    pub recomputed_cost: u64,
    pub self_check: SelfCheck,
    pub arrangement: Vec<VertexId>,
    pub trace: Vec<TraceRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleReport {
    pub cost: u64,
    pub method: OracleMethod,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub cost: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BugdemoRow {
    pub levels: u32,
    pub n: usize,
    pub closed_form: u64,
    pub fix_a: u64,
    pub fix_b: u64,
    pub original_bug: u64,
    pub original_bug_recomputed: u64,
    pub fix_a_self_check: SelfCheck,
    pub fix_b_self_check: SelfCheck,
    pub original_bug_self_check: SelfCheck,
}

/// The JSON-serializable outcome of one command invocation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub tree: Option<TreeSummary>,
    pub anchor: Option<VertexId>,
    pub modes: Vec<ModeReport>,
    pub oracle: Option<OracleReport>,
    pub check: Option<CheckReport>,
    pub bugdemo: Option<Vec<BugdemoRow>>,
    pub difftest: Option<DifftestReport>,
    pub wall_ms: f64,
    pub exit_status: i32,
}

impl RunReport {
    fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            tree: None,
            anchor: None,
            modes: Vec::new(),
            oracle: None,
            check: None,
            bugdemo: None,
            difftest: None,
            wall_ms: 0.0,
            exit_status: EXIT_OK,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone)]
pub struct SolveRequest {
    pub tree: Tree,
    /// Echo of where the tree came from: a kind spec or `file:<path>`.
    pub label: String,
    pub seed: Option<u64>,
    pub mode: FormulaMode,
    pub vstar: VstarPolicy,
    pub p_policy: PPolicy,
    pub anchor: Option<VertexId>,
    pub with_oracle: bool,
}

impl SolveRequest {
    pub fn new(tree: Tree, label: impl Into<String>) -> Self {
        SolveRequest {
            tree,
            label: label.into(),
            seed: None,
            mode: FormulaMode::FixB,
            vstar: VstarPolicy::Centroid,
            p_policy: PPolicy::MinOverAll,
            anchor: None,
            with_oracle: false,
        }
    }
}

/// Solve one tree in one mode; exit status 3 when the self-check fails.
pub fn cmd_solve(req: &SolveRequest) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut report = RunReport::new("solve");
    report.tree = Some(TreeSummary {
        n: req.tree.n(),
        kind: req.label.clone(),
        seed: req.seed,
    });
    report.anchor = req.anchor;

    let config = SolverConfig {
        mode: req.mode,
        vstar_policy: req.vstar,
        p_policy: req.p_policy,
        ..SolverConfig::default()
    };
    let result = match req.anchor {
        Some(v) => mla_anchored(&req.tree, v, &config)?,
        None => mla_free(&req.tree, &config)?,
    };
    if req.with_oracle {
        if req.tree.n() > SUBSET_DP_MAX {
            return Err(CliError::Oracle(OracleError::TooLarge {
                method: "subset_dp",
                max: SUBSET_DP_MAX,
                n: req.tree.n(),
            }));
        }
        let oracle = match req.anchor {
            Some(v) => exact_anchored_mla(&req.tree, v, AnchorSide::Right)?,
            None => exact_mla(&req.tree)?,
        };
        report.oracle = Some(OracleReport {
            cost: oracle.cost,
            method: OracleMethod::SubsetDp,
        });
    }
    let self_check = SelfCheck::from_costs(result.cost, result.recomputed_cost);
    report.exit_status = if self_check.passed() {
        EXIT_OK
    } else {
        EXIT_SELF_CHECK_FAILED
    };
    report.modes.push(ModeReport {
        mode: req.mode,
        cost: result.cost,
        recomputed_cost: result.recomputed_cost,
        self_check,
        arrangement: result.arrangement.order().to_vec(),
        trace: result.trace,
    });
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Evaluate a given arrangement against a tree.
pub fn cmd_check(tree: &Tree, arrangement: &Arrangement) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut report = RunReport::new("check");
    report.tree = Some(TreeSummary {
        n: tree.n(),
        kind: "file".to_string(),
        seed: None,
    });
    let d = cost(tree, arrangement)?;
    report.check = Some(CheckReport { cost: d });
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Differential testing; exit status 3 when any discrepancy was found.
pub fn cmd_difftest(opts: &DifftestOptions) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut report = RunReport::new("difftest");
    let result = run_difftest(opts)?;
    report.exit_status = if result.discrepancies.is_empty() {
        EXIT_OK
    } else {
        EXIT_SELF_CHECK_FAILED
    };
    report.difftest = Some(result);
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// The divergence table: complete binary trees of 2..=6 levels in all
/// three modes against the closed form.
pub fn cmd_bugdemo() -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut report = RunReport::new("bugdemo");
    let mut rows = Vec::new();
    for levels in 2..=6u32 {
        let tree =
            crate::generate::generate(&crate::generate::TreeKind::CompleteBinary { levels }, 0)?;
        let closed = crate::oracle::closed_form_complete_binary(levels)?;
        let fix_a = mla_free(&tree, &SolverConfig::with_mode(FormulaMode::FixA))?;
        let fix_b = mla_free(&tree, &SolverConfig::with_mode(FormulaMode::FixB))?;
        let bug = mla_free(&tree, &SolverConfig::with_mode(FormulaMode::OriginalBug))?;
        rows.push(BugdemoRow {
            levels,
            n: tree.n(),
            closed_form: closed,
            fix_a: fix_a.cost,
            fix_b: fix_b.cost,
            original_bug: bug.cost,
            original_bug_recomputed: bug.recomputed_cost,
            fix_a_self_check: SelfCheck::from_costs(fix_a.cost, fix_a.recomputed_cost),
            fix_b_self_check: SelfCheck::from_costs(fix_b.cost, fix_b.recomputed_cost),
            original_bug_self_check: SelfCheck::from_costs(bug.cost, bug.recomputed_cost),
        });
    }
    report.bugdemo = Some(rows);
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Human-readable rendering of a report (the non-JSON CLI output).
pub fn render_text(report: &RunReport) -> String {
    let mut out = String::new();
    if let Some(tree) = &report.tree {
        out.push_str(&format!("tree: n={} ({})", tree.n, tree.kind));
        if let Some(seed) = tree.seed {
            out.push_str(&format!(" seed={seed}"));
        }
        out.push('\n');
    }
    if let Some(anchor) = report.anchor {
        out.push_str(&format!("anchor: {anchor} (right)\n"));
    }
    for m in &report.modes {
        out.push_str(&format!(
            "mode {}: cost={} recomputed={} self-check={}\n",
            m.mode, m.cost, m.recomputed_cost, m.self_check
        ));
        out.push_str(&format!(
            "arrangement: {}\n",
            m.arrangement
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    if let Some(oracle) = &report.oracle {
        let verdict = report
            .modes
            .first()
            .map(|m| {
                if m.cost == oracle.cost {
                    "match"
                } else {
                    "MISMATCH"
                }
            })
            .unwrap_or("");
        out.push_str(&format!("oracle: {} {}\n", oracle.cost, verdict));
    }
    if let Some(check) = &report.check {
        out.push_str(&format!("arrangement cost: {}\n", check.cost));
    }
    if let Some(rows) = &report.bugdemo {
        out.push_str("levels |    n | closed | fix-a | fix-b | original-bug | bug self-check\n");
        out.push_str("-------+------+--------+-------+-------+--------------+---------------\n");
        for r in rows {
            out.push_str(&format!(
                "{:>6} | {:>4} | {:>6} | {:>5} | {:>5} | {:>12} | {}\n",
                r.levels,
                r.n,
                r.closed_form,
                r.fix_a,
                r.fix_b,
                r.original_bug,
                r.original_bug_self_check
            ));
        }
    }
    if let Some(d) = &report.difftest {
        out.push_str(&format!(
            "difftest: {} tree(s) checked, {} discrepancy(ies), seed {}\n",
            d.trees_checked,
            d.discrepancies.len(),
            d.seed
        ));
        for disc in &d.discrepancies {
            let kinds: Vec<String> = disc.kinds.iter().map(|k| format!("{k:?}")).collect();
            out.push_str(&format!(
                "  trial {}: n={} kinds={} oracle={:?} costs={}\n",
                disc.trial,
                disc.n,
                kinds.join("+"),
                disc.oracle_cost,
                disc.mode_costs
                    .iter()
                    .map(|m| format!("{}={}({})", m.mode, m.cost, m.recomputed_cost))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
        }
        for c in &d.counterexamples {
            out.push_str(&format!(
                "  minimal counterexample from trial {} (n={}):\n",
                c.trial, c.n
            ));
            for line in c.edge_list.lines() {
                out.push_str(&format!("    {line}\n"));
            }
        }
    }
    out.push_str(&format!("exit status: {}\n", report.exit_status));
    out
}
