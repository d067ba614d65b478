//! Property-based tests over random trees and arrangements.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mla::arrangement::{anchored_cost, cost, AnchorSide, Arrangement};
use mla::generate::random_tree;
use mla::oracle::{exact_anchored_mla, exact_mla, exact_mla_with, OracleMethod};
use mla::partition::{centroid, remove_center};
use mla::solver::{mla_anchored, mla_free, FormulaMode, SolverConfig};
use mla::tree::{Tree, VertexId};

fn seeded_tree(n: usize, seed: u64) -> Tree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tree(n, &mut rng)
}

fn seeded_arrangement(n: usize, seed: u64) -> Arrangement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<VertexId> = (1..=n as VertexId).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    Arrangement::from_order(&order).unwrap()
}

proptest! {
    #[test]
    fn edge_list_round_trip(n in 1usize..=20, seed: u64) {
        let tree = seeded_tree(n, seed);
        let parsed = Tree::parse(&tree.to_edge_list()).unwrap();
        prop_assert_eq!(parsed, tree);
    }

    #[test]
    fn arrangement_line_round_trip(n in 1usize..=20, seed: u64) {
        let arr = seeded_arrangement(n, seed);
        let parsed = Arrangement::parse(&arr.to_line()).unwrap();
        prop_assert_eq!(parsed, arr);
    }

    #[test]
    fn shift_and_reverse_compose(n in 1usize..=16, seed: u64, a in -50i64..=50) {
        let tree = seeded_tree(n, seed);
        let arr = seeded_arrangement(n, seed ^ 0x9e37);
        let shifted = arr.shift(a);
        prop_assert_eq!(shifted.base(), a);
        prop_assert_eq!(shifted.shift(-a), arr.clone());
        prop_assert_eq!(cost(&tree, &arr).unwrap(), cost(&tree, &shifted).unwrap());
        let rev = arr.reverse().unwrap();
        prop_assert_eq!(rev.reverse().unwrap(), arr.clone());
        prop_assert_eq!(cost(&tree, &arr).unwrap(), cost(&tree, &rev).unwrap());
    }

    #[test]
    fn partition_invariants(n in 2usize..=20, seed: u64) {
        let tree = seeded_tree(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51);
        let v = rng.gen_range(1..=n as VertexId);
        let part = remove_center(&tree, v).unwrap();
        let sizes = part.sizes();
        prop_assert_eq!(sizes.iter().sum::<usize>(), n - 1);
        prop_assert!(sizes.windows(2).all(|w| w[0] >= w[1]));
        for s in &part.subtrees {
            prop_assert!(tree.neighbors(v).contains(&s.root));
            prop_assert!(!s.vertices.contains(&v));
        }
        // the centroid's largest component is at most half the tree
        let c = centroid(&tree);
        let largest = remove_center(&tree, c).unwrap().sizes()[0];
        prop_assert!(largest <= n / 2);
    }

    #[test]
    fn oracle_methods_agree(n in 1usize..=7, seed: u64) {
        let tree = seeded_tree(n, seed);
        let dp = exact_mla_with(&tree, OracleMethod::SubsetDp).unwrap();
        let brute = exact_mla_with(&tree, OracleMethod::Factorial).unwrap();
        prop_assert_eq!(dp.cost, brute.cost);
        prop_assert_eq!(cost(&tree, &dp.arrangement).unwrap(), dp.cost);
        prop_assert_eq!(cost(&tree, &brute.arrangement).unwrap(), brute.cost);
    }

    #[test]
    fn solver_matches_oracle(n in 1usize..=12, seed: u64) {
        let tree = seeded_tree(n, seed);
        let oracle = exact_mla(&tree).unwrap().cost;
        for mode in [FormulaMode::FixA, FormulaMode::FixB] {
            let r = mla_free(&tree, &SolverConfig::with_mode(mode)).unwrap();
            prop_assert_eq!(r.cost, oracle);
            prop_assert_eq!(r.cost, r.recomputed_cost);
        }
    }

    #[test]
    fn anchored_solver_matches_oracle(n in 1usize..=10, seed: u64) {
        let tree = seeded_tree(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA17);
        let v = rng.gen_range(1..=n as VertexId);
        let oracle = exact_anchored_mla(&tree, v, AnchorSide::Right).unwrap();
        let r = mla_anchored(&tree, v, &SolverConfig::default()).unwrap();
        prop_assert_eq!(r.cost, oracle.cost);
        // a right-anchored optimum never improves on the free optimum
        let free = exact_mla(&tree).unwrap().cost;
        prop_assert!(r.cost >= free);
    }

    #[test]
    fn anchored_oracle_sides_are_symmetric(n in 1usize..=9, seed: u64) {
        let tree = seeded_tree(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x88);
        let v = rng.gen_range(1..=n as VertexId);
        let left = exact_anchored_mla(&tree, v, AnchorSide::Left).unwrap().cost;
        let right = exact_anchored_mla(&tree, v, AnchorSide::Right).unwrap().cost;
        prop_assert_eq!(left, right);
    }

    #[test]
    fn anchored_cost_evaluator_matches_definition(n in 1usize..=14, seed: u64) {
        let tree = seeded_tree(n, seed);
        let arr = seeded_arrangement(n, seed ^ 0x3c);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3d);
        let v = rng.gen_range(1..=n as VertexId);
        let p = arr.position_of(v).unwrap();
        let free = cost(&tree, &arr).unwrap();
        prop_assert_eq!(
            anchored_cost(&tree, v, AnchorSide::Right, &arr).unwrap(),
            free + (n as i64 - p) as u64
        );
        prop_assert_eq!(
            anchored_cost(&tree, v, AnchorSide::Left, &arr).unwrap(),
            free + (p - 1) as u64
        );
    }
}
