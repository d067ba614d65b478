//! Differential testing with counterexample shrinking: hunt for trees
//! where a mode disagrees with the oracle or with its own witness, then
//! shrink each failure to a minimal fixture by leaf deletion.
//!
//! ```bash
//! cargo run --example difftest_shrink
//! ```

use mla::difftest::{run_difftest, DifftestOptions};
use mla::{FormulaMode, TreeKind};

fn main() {
    // Corrected modes over random trees: expected clean.
    let clean = run_difftest(&DifftestOptions {
        trials: 300,
        nmax: 16,
        seed: 1,
        modes: vec![FormulaMode::FixA, FormulaMode::FixB],
        generated: None,
    })
    .expect("valid options");
    println!(
        "corrected modes: {} trees checked, {} discrepancies",
        clean.trees_checked,
        clean.discrepancies.len()
    );

    // The as-published mode on the classic failing family.
    let buggy = run_difftest(&DifftestOptions {
        modes: vec![FormulaMode::OriginalBug],
        generated: Some(TreeKind::CompleteBinary { levels: 5 }),
        ..DifftestOptions::default()
    })
    .expect("valid options");
    println!(
        "as-published mode on complete-binary:5: {} discrepancy",
        buggy.discrepancies.len()
    );
    let d = &buggy.discrepancies[0];
    println!(
        "  reported {} vs oracle {:?} ({:?})",
        d.mode_costs[0].cost, d.oracle_cost, d.kinds
    );
    let c = &buggy.counterexamples[0];
    println!(
        "  shrunk from n=31 to a minimal n={} fixture that still fails:",
        c.n
    );
    for line in c.edge_list.lines() {
        println!("    {line}");
    }
}
