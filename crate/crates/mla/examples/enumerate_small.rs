//! Exhaustively verify the solver on every labeled tree of a given size,
//! enumerated through Prüfer sequences.
//!
//! ```bash
//! cargo run --example enumerate_small            # n = 7 (16807 trees)
//! cargo run --example enumerate_small -- 8       # n = 8 (262144 trees)
//! ```

use std::time::Instant;

use mla::{exact_mla, labeled_trees, mla_free, SolverConfig};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("n must be an integer"))
        .unwrap_or(7);
    assert!((1..=8).contains(&n), "keep n within 1..=8 for this demo");

    let config = SolverConfig::default();
    let start = Instant::now();
    let mut count = 0usize;
    let mut cost_histogram = std::collections::BTreeMap::<u64, usize>::new();

    for tree in labeled_trees(n) {
        let solver = mla_free(&tree, &config).expect("solve");
        let oracle = exact_mla(&tree).expect("within dp bound");
        assert_eq!(
            solver.cost,
            oracle.cost,
            "mismatch on:\n{}",
            tree.to_edge_list()
        );
        assert!(solver.self_check_passes());
        *cost_histogram.entry(solver.cost).or_default() += 1;
        count += 1;
    }

    println!(
        "verified {count} labeled trees on {n} vertices in {:?}",
        start.elapsed()
    );
    println!("optimum distribution:");
    for (cost, trees) in &cost_histogram {
        println!("  cost {cost:>3}: {trees} tree(s)");
    }
}
