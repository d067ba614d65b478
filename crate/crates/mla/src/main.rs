//! Thin command-line front end over the library drivers in [`mla::report`].

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mla::arrangement::Arrangement;
use mla::difftest::DifftestOptions;
use mla::generate::{generate, TreeKind};
use mla::report::{
    cmd_bugdemo, cmd_check, cmd_difftest, cmd_solve, render_text, RunReport, SolveRequest,
    EXIT_INPUT_ERROR,
};
use mla::solver::{FormulaMode, PPolicy, VstarPolicy};
use mla::tree::{Tree, VertexId};

#[derive(Parser)]
#[command(
    name = "mla",
    version,
    about = "Exact minimum linear arrangement solver for trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a tree read from a file or generated from a spec.
    Solve {
        /// Edge-list file (first line n, then n-1 lines "u v").
        input: Option<PathBuf>,
        /// Generate the tree instead, e.g. complete-binary:5 or path:12.
        #[arg(long, value_name = "KIND:PARAMS")]
        gen: Option<String>,
        /// Formula mode.
        #[arg(long, default_value = "fix-b")]
        mode: FormulaMode,
        /// Center selection policy for free subproblems.
        #[arg(long, default_value = "centroid")]
        vstar: VstarPolicy,
        /// Pair-count selection policy.
        #[arg(long = "p", default_value = "min")]
        p_policy: PPolicy,
        /// Solve the tree anchored at this vertex (right side).
        #[arg(long)]
        anchor: Option<VertexId>,
        /// Cross-check against the exact oracle (n <= 24).
        #[arg(long)]
        oracle: bool,
        /// Seed for random generators.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Recompute the cost of a given arrangement for a tree.
    Check {
        /// Edge-list tree file.
        tree: PathBuf,
        /// Arrangement file: one line of vertex ids in position order.
        arrangement: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Differential testing of solver modes against the exact oracles.
    Difftest {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Largest random tree size (oracle comparison requires <= 24).
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated modes to run.
        #[arg(long, value_delimiter = ',', default_value = "fix-a,fix-b")]
        modes: Vec<FormulaMode>,
        /// Assess a single generated tree instead of random trials.
        #[arg(long, value_name = "KIND:PARAMS")]
        gen: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Show the corrected/as-published divergence on complete binary trees.
    Bugdemo {
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, json)) => {
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", render_text(&report));
            }
            ExitCode::from(report.exit_status as u8)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(RunReport, bool), String> {
    match cli.command {
        Command::Solve {
            input,
            gen,
            mode,
            vstar,
            p_policy,
            anchor,
            oracle,
            seed,
            json,
        } => {
            let (tree, label, seed_echo) = load_tree(input, gen, seed)?;
            let req = SolveRequest {
                tree,
                label,
                seed: seed_echo,
                mode,
                vstar,
                p_policy,
                anchor,
                with_oracle: oracle,
            };
            let report = cmd_solve(&req).map_err(|e| e.to_string())?;
            Ok((report, json))
        }
        Command::Check {
            tree,
            arrangement,
            json,
        } => {
            let tree_text = read(&tree)?;
            let arr_text = read(&arrangement)?;
            let tree = Tree::parse(&tree_text).map_err(|e| e.to_string())?;
            let arr = Arrangement::parse(&arr_text).map_err(|e| e.to_string())?;
            let report = cmd_check(&tree, &arr).map_err(|e| e.to_string())?;
            Ok((report, json))
        }
        Command::Difftest {
            trials,
            nmax,
            seed,
            modes,
            gen,
            json,
        } => {
            let generated = match gen {
                Some(spec) => Some(spec.parse::<TreeKind>().map_err(|e| e.to_string())?),
                None => None,
            };
            let opts = DifftestOptions {
                trials,
                nmax,
                seed,
                modes,
                generated,
            };
            let report = cmd_difftest(&opts).map_err(|e| e.to_string())?;
            Ok((report, json))
        }
        Command::Bugdemo { json } => {
            let report = cmd_bugdemo().map_err(|e| e.to_string())?;
            Ok((report, json))
        }
    }
}

fn load_tree(
    input: Option<PathBuf>,
    gen: Option<String>,
    seed: u64,
) -> Result<(Tree, String, Option<u64>), String> {
    match (input, gen) {
        (Some(path), None) => {
            let text = read(&path)?;
            let tree = Tree::parse(&text).map_err(|e| e.to_string())?;
            Ok((tree, format!("file:{}", path.display()), None))
        }
        (None, Some(spec)) => {
            let kind: TreeKind = spec
                .parse()
                .map_err(|e: mla::GenerateError| e.to_string())?;
            let tree = generate(&kind, seed).map_err(|e| e.to_string())?;
            let seed_echo = kind.is_random().then_some(seed);
            Ok((tree, spec, seed_echo))
        }
        (Some(_), Some(_)) => Err("give either an input file or --gen, not both".to_string()),
        (None, None) => Err("give an input file or --gen".to_string()),
    }
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}
