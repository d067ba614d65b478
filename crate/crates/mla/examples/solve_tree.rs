//! Solve a tree, free and anchored, and inspect the result.
//!
//! ```bash
//! cargo run --example solve_tree
//! ```

use mla::{
    anchored_cost, cost, mla_anchored, mla_free, AnchorSide, SolverConfig, TraceChoice, Tree,
};

fn main() {
    // A small caterpillar, written in the edge-list format the CLI reads.
    let text = "9\n1 2\n2 3\n3 4\n2 5\n2 6\n3 7\n3 8\n4 9\n";
    let tree = Tree::parse(text).expect("valid edge list");

    let config = SolverConfig::default();
    let free = mla_free(&tree, &config).expect("solve");
    println!("free optimum: {}", free.cost);
    println!(
        "arrangement:  {}",
        free.arrangement
            .order()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    println!(
        "recomputed:   {} (self-check {})",
        free.recomputed_cost,
        if free.self_check_passes() {
            "pass"
        } else {
            "fail"
        }
    );
    assert_eq!(
        free.recomputed_cost,
        cost(&tree, &free.arrangement).unwrap()
    );

    // The form trace shows which layout won at each recursion node.
    for rec in &free.trace {
        match &rec.choice {
            TraceChoice::TypeA => {
                println!(
                    "  node n={:<2} center {} -> end-block form",
                    rec.size, rec.vstar
                )
            }
            TraceChoice::TypeB { p, .. } => println!(
                "  node n={:<2} center {} -> surrounded form, {} pair(s)",
                rec.size, rec.vstar, p
            ),
        }
    }

    // Anchored at vertex 4: the cost includes the anchor length.
    let anchored = mla_anchored(&tree, 4, &config).expect("solve");
    println!("anchored at 4: {}", anchored.cost);
    assert_eq!(
        anchored.cost,
        anchored_cost(&tree, 4, AnchorSide::Right, &anchored.arrangement).unwrap()
    );
}
