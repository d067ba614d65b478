//! Acceptance suite: one test per criterion, each printing a pass line
//! with its measured runtime. Run with
//! `cargo test -p mla --test acceptance -- --nocapture`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mla::arrangement::{anchored_cost, cost, AnchorSide, Arrangement};
use mla::difftest::DifftestOptions;
use mla::generate::{generate, labeled_trees, random_tree, TreeKind};
use mla::oracle::{closed_form_complete_binary, exact_anchored_mla, exact_mla};
use mla::report::cmd_difftest;
use mla::solver::{
    mla_anchored, mla_free, FormulaMode, SolveResult, SolverConfig, TraceChoice, VstarPolicy,
};
use mla::tree::{Tree, VertexId};

const CORRECTED: [FormulaMode; 2] = [FormulaMode::FixA, FormulaMode::FixB];

fn config(mode: FormulaMode, vstar: VstarPolicy) -> SolverConfig {
    SolverConfig {
        mode,
        vstar_policy: vstar,
        ..SolverConfig::default()
    }
}

/// The seeded random corpus shared by criteria 4, 5 and 7: 500 trees with
/// n in [9, 18], each with three anchor vertices.
fn random_corpus() -> Vec<(Tree, Vec<VertexId>)> {
    const SEED: u64 = 20_240_817;
    (0..500)
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED);
            rng.set_stream(trial as u64 + 1);
            let n = rng.gen_range(9..=18usize);
            let tree = random_tree(n, &mut rng);
            let anchors = (0..3).map(|_| rng.gen_range(1..=n as VertexId)).collect();
            (tree, anchors)
        })
        .collect()
}

#[test]
fn criterion_1_closed_form_reproduction() {
    let start = Instant::now();
    for levels in 2..=10u32 {
        let expected = closed_form_complete_binary(levels).unwrap();
        let tree = generate(&TreeKind::CompleteBinary { levels }, 0).unwrap();
        let mut costs = Vec::new();
        for mode in CORRECTED {
            let r = mla_free(&tree, &SolverConfig::with_mode(mode)).unwrap();
            assert_eq!(
                r.cost, expected,
                "{mode} at {levels} levels reported {} != closed form {expected}",
                r.cost
            );
            assert!(r.self_check_passes());
            costs.push(r.cost);
        }
        assert_eq!(costs[0], costs[1], "fix equivalence at {levels} levels");
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "criterion 1 budget is 10 s, took {elapsed:?}"
    );
    println!("criterion 1 (closed-form reproduction, levels 2..=10, exact): PASS in {elapsed:?}");
}

#[test]
fn criterion_2_bug_reproduction() {
    let start = Instant::now();

    let tree = generate(&TreeKind::CompleteBinary { levels: 5 }, 0).unwrap();
    let bug = mla_free(&tree, &SolverConfig::with_mode(FormulaMode::OriginalBug)).unwrap();
    assert!(
        bug.cost < 60,
        "as-published mode must under-report 60, got {}",
        bug.cost
    );
    assert_ne!(
        bug.cost, bug.recomputed_cost,
        "as-published mode must fail its self-check at 5 levels"
    );
    println!(
        "criterion 2 info: original-bug reports {} at 5 levels (recomputed {}; historical buggy value was 46)",
        bug.cost, bug.recomputed_cost
    );

    for levels in 2..=4u32 {
        let expected = closed_form_complete_binary(levels).unwrap();
        let tree = generate(&TreeKind::CompleteBinary { levels }, 0).unwrap();
        for mode in FormulaMode::ALL {
            let r = mla_free(&tree, &SolverConfig::with_mode(mode)).unwrap();
            assert_eq!(
                r.cost, expected,
                "{mode} must agree with the optimum at {levels} levels"
            );
            assert!(r.self_check_passes());
        }
    }

    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "criterion 2 budget is 1 s, took {elapsed:?}"
    );
    println!("criterion 2 (bug reproduction and sub-threshold agreement): PASS in {elapsed:?}");
}

#[test]
fn criterion_3_oracle_equivalence_exhaustive() {
    let start = Instant::now();
    let mut total = 0usize;
    for n in 1..=8usize {
        for tree in labeled_trees(n) {
            total += 1;
            let oracle = exact_mla(&tree).unwrap().cost;
            let mut costs = Vec::new();
            for mode in CORRECTED {
                let r = mla_free(&tree, &SolverConfig::with_mode(mode)).unwrap();
                assert_eq!(
                    r.cost,
                    oracle,
                    "{mode} disagrees with the oracle on:\n{}",
                    tree.to_edge_list()
                );
                assert_eq!(
                    r.cost,
                    r.recomputed_cost,
                    "witness recomputation mismatch on:\n{}",
                    tree.to_edge_list()
                );
                costs.push(r.cost);
            }
            assert_eq!(costs[0], costs[1]);
        }
    }
    assert_eq!(total, 1 + 1 + 3 + 16 + 125 + 1296 + 16807 + 262144);
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 300.0,
        "criterion 3 budget is 5 min, took {elapsed:?}"
    );
    println!(
        "criterion 3 (oracle equivalence over all {total} labeled trees, n <= 8, 0 mismatches): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_4_oracle_equivalence_randomized() {
    let start = Instant::now();
    let corpus = random_corpus();
    assert_eq!(corpus.len(), 500);
    for (tree, anchors) in &corpus {
        let oracle = exact_mla(tree).unwrap().cost;
        for mode in CORRECTED {
            for vstar in [VstarPolicy::Centroid, VstarPolicy::Exhaustive] {
                let r = mla_free(tree, &config(mode, vstar)).unwrap();
                assert_eq!(
                    r.cost,
                    oracle,
                    "{mode}/{vstar:?} disagrees with the oracle on:\n{}",
                    tree.to_edge_list()
                );
                assert_eq!(r.cost, r.recomputed_cost);
            }
        }
        for &v in anchors {
            let oracle = exact_anchored_mla(tree, v, AnchorSide::Right).unwrap().cost;
            for mode in CORRECTED {
                let r = mla_anchored(tree, v, &SolverConfig::with_mode(mode)).unwrap();
                assert_eq!(
                    r.cost,
                    oracle,
                    "anchored {mode} at {v} disagrees on:\n{}",
                    tree.to_edge_list()
                );
                assert_eq!(r.cost, r.recomputed_cost);
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 300.0,
        "criterion 4 budget is 5 min, took {elapsed:?}"
    );
    println!(
        "criterion 4 (oracle equivalence, 500 random trees n in [9,18], both modes and policies, anchored at 3 vertices each, 0 mismatches): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_5_fix_equivalence() {
    // Criteria 1-4 assert fix-a == fix-b inline on every one of their
    // instances; this sweep re-checks the equivalence surface on its own.
    let start = Instant::now();
    let mut checked = 0usize;
    for levels in 2..=10u32 {
        let tree = generate(&TreeKind::CompleteBinary { levels }, 0).unwrap();
        let a = mla_free(&tree, &SolverConfig::with_mode(FormulaMode::FixA)).unwrap();
        let b = mla_free(&tree, &SolverConfig::with_mode(FormulaMode::FixB)).unwrap();
        assert_eq!(a.cost, b.cost, "divergence at {levels} levels");
        checked += 1;
    }
    for n in 1..=7usize {
        for tree in labeled_trees(n) {
            let a = mla_free(&tree, &SolverConfig::with_mode(FormulaMode::FixA)).unwrap();
            let b = mla_free(&tree, &SolverConfig::with_mode(FormulaMode::FixB)).unwrap();
            assert_eq!(a.cost, b.cost, "divergence on:\n{}", tree.to_edge_list());
            checked += 1;
        }
    }
    for (tree, anchors) in &random_corpus() {
        let a = mla_free(tree, &SolverConfig::with_mode(FormulaMode::FixA)).unwrap();
        let b = mla_free(tree, &SolverConfig::with_mode(FormulaMode::FixB)).unwrap();
        assert_eq!(a.cost, b.cost, "divergence on:\n{}", tree.to_edge_list());
        for &v in anchors {
            let a = mla_anchored(tree, v, &SolverConfig::with_mode(FormulaMode::FixA)).unwrap();
            let b = mla_anchored(tree, v, &SolverConfig::with_mode(FormulaMode::FixB)).unwrap();
            assert_eq!(a.cost, b.cost);
        }
        checked += 1;
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 5 (fix equivalence on {checked} instances, plus inline checks in criteria 1-4): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_6_invariance_suite() {
    let start = Instant::now();
    const SAMPLES: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(6_000_001);

    for _ in 0..SAMPLES {
        let n = rng.gen_range(1..=16usize);
        let tree = random_tree(n, &mut rng);
        let arr = random_arrangement(n, &mut rng);
        let a = rng.gen_range(-20..=20i64);
        let v = rng.gen_range(1..=n as VertexId);

        let free = cost(&tree, &arr).unwrap();

        // shift invariance of the plain cost
        let shifted = arr.shift(a);
        assert_eq!(free, cost(&tree, &shifted).unwrap());

        // anchored shift relation: evaluating the anchor formula on the
        // shifted arrangement overstates the true anchored cost by a
        let anchored = anchored_cost(&tree, v, AnchorSide::Right, &arr).unwrap();
        let shifted_eval =
            cost(&tree, &shifted).unwrap() as i64 + n as i64 - shifted.position_of(v).unwrap();
        assert_eq!(anchored as i64, shifted_eval - a);

        // left/right reversal symmetry
        let left = anchored_cost(&tree, v, AnchorSide::Left, &arr).unwrap();
        let right_rev =
            anchored_cost(&tree, v, AnchorSide::Right, &arr.reverse().unwrap()).unwrap();
        assert_eq!(left, right_rev);

        // relabeling invariance
        let perm = random_order(n, &mut rng);
        let relabeled_tree = Tree::new(
            n,
            tree.edges()
                .iter()
                .map(|&(x, y)| (perm[(x - 1) as usize], perm[(y - 1) as usize])),
        )
        .unwrap();
        let relabeled_order: Vec<VertexId> = arr
            .order()
            .iter()
            .map(|&x| perm[(x - 1) as usize])
            .collect();
        let relabeled_arr = Arrangement::from_order(&relabeled_order).unwrap();
        assert_eq!(free, cost(&relabeled_tree, &relabeled_arr).unwrap());

        // lower bound: every edge has length >= 1
        assert!(free >= (n as u64) - 1);
    }

    // the canonical path order attains the lower bound
    for n in 1..=16usize {
        let path = generate(&TreeKind::Path { n }, 0).unwrap();
        let identity = Arrangement::identity(n).unwrap();
        assert_eq!(cost(&path, &identity).unwrap(), (n as u64) - 1);
    }

    let elapsed = start.elapsed();
    println!(
        "criterion 6 (invariance suite, {SAMPLES} samples per property, 0 failures): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_7_layout_identity() {
    let start = Instant::now();
    let corpus = random_corpus();
    let mut type_b_nodes = 0usize;
    let mut check = |r: &SolveResult| {
        for rec in &r.trace {
            if let TraceChoice::TypeB {
                blocks,
                center_tree,
                ..
            } = &rec.choice
            {
                type_b_nodes += 1;
                let total: usize = blocks.iter().map(|b| b.size).sum::<usize>() + center_tree.size;
                assert_eq!(
                    total, rec.size,
                    "block sizes must sum to the subproblem size"
                );
                for b in blocks.iter().chain(std::iter::once(center_tree)) {
                    assert_eq!(
                        b.offset, b.assembled_offset,
                        "block {} starts at {} but the layout places it at {}",
                        b.index, b.assembled_offset, b.offset
                    );
                }
            }
        }
    };
    for (tree, anchors) in &corpus {
        for mode in CORRECTED {
            for vstar in [VstarPolicy::Centroid, VstarPolicy::Exhaustive] {
                check(&mla_free(tree, &config(mode, vstar)).unwrap());
            }
            for &v in anchors {
                check(&mla_anchored(tree, v, &SolverConfig::with_mode(mode)).unwrap());
            }
        }
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 7 (layout identity over {type_b_nodes} surrounded-form trace nodes, 0 failures): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_8_determinism() {
    let start = Instant::now();
    let opts = DifftestOptions {
        trials: 60,
        nmax: 14,
        seed: 2024,
        modes: vec![
            FormulaMode::FixA,
            FormulaMode::FixB,
            FormulaMode::OriginalBug,
        ],
        generated: None,
    };
    let strip = |json: String| -> String {
        let mut value: serde_json::Value = serde_json::from_str(&json).unwrap();
        value.as_object_mut().unwrap().remove("wall_ms");
        serde_json::to_string(&value).unwrap()
    };
    let first = strip(cmd_difftest(&opts).unwrap().to_json());
    let second = strip(cmd_difftest(&opts).unwrap().to_json());
    assert_eq!(first.into_bytes(), second.into_bytes());
    let elapsed = start.elapsed();
    println!(
        "criterion 8 (difftest determinism, byte-identical reports modulo wall time): PASS in {elapsed:?}"
    );
}

fn random_order(n: usize, rng: &mut impl Rng) -> Vec<VertexId> {
    let mut order: Vec<VertexId> = (1..=n as VertexId).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    order
}

fn random_arrangement(n: usize, rng: &mut impl Rng) -> Arrangement {
    Arrangement::from_order(&random_order(n, rng)).unwrap()
}
