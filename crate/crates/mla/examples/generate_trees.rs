//! The tree families and their canonical labelings.
//!
//! ```bash
//! cargo run --example generate_trees
//! ```

use mla::{generate, mla_free, SolverConfig, TreeKind};

fn main() {
    let kinds = [
        TreeKind::Path { n: 6 },
        TreeKind::Star { n: 6 },
        TreeKind::Caterpillar { spine: 3, legs: 1 },
        TreeKind::CompleteBinary { levels: 3 },
        TreeKind::CompleteKary {
            arity: 3,
            levels: 2,
        },
        TreeKind::RandomPrufer { n: 6 },
    ];
    let config = SolverConfig::default();
    for kind in &kinds {
        let tree = generate(kind, 42).expect("valid parameters");
        let optimum = mla_free(&tree, &config).expect("solve").cost;
        println!("--- {kind} (n = {}, optimum {optimum}) ---", tree.n());
        // The exact fixture text the CLI and difftest emit.
        print!("{}", tree.to_edge_list());
    }

    // Random generation is deterministic in the seed.
    let a = generate(&TreeKind::RandomPrufer { n: 12 }, 7).unwrap();
    let b = generate(&TreeKind::RandomPrufer { n: 12 }, 7).unwrap();
    assert_eq!(a, b);
    println!("--- random-prufer:12 with seed 7 is reproducible ---");
}
