//! Cross-check the solver against the exact subset-DP oracle on random
//! trees, free and anchored.
//!
//! ```bash
//! cargo run --example oracle_crosscheck
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mla::{
    exact_anchored_mla, exact_mla, mla_anchored, mla_free, random_tree, AnchorSide, FormulaMode,
    SolverConfig, VertexId,
};

fn main() {
    let trials = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut free_checked = 0;
    let mut anchored_checked = 0;

    for _ in 0..trials {
        let n = rng.gen_range(2..=14usize);
        let tree = random_tree(n, &mut rng);

        let oracle = exact_mla(&tree).expect("n within dp bound");
        for mode in [FormulaMode::FixA, FormulaMode::FixB] {
            let r = mla_free(&tree, &SolverConfig::with_mode(mode)).unwrap();
            assert_eq!(
                r.cost,
                oracle.cost,
                "free mismatch:\n{}",
                tree.to_edge_list()
            );
            assert!(r.self_check_passes());
        }
        free_checked += 1;

        let v = rng.gen_range(1..=n as VertexId);
        let oracle = exact_anchored_mla(&tree, v, AnchorSide::Right).unwrap();
        let r = mla_anchored(&tree, v, &SolverConfig::default()).unwrap();
        assert_eq!(
            r.cost,
            oracle.cost,
            "anchored mismatch at {v}:\n{}",
            tree.to_edge_list()
        );
        anchored_checked += 1;
    }

    println!("free solves checked:     {free_checked} (0 mismatches)");
    println!("anchored solves checked: {anchored_checked} (0 mismatches)");
}
