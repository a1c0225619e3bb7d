//! Acceptance suite: one test per exit criterion, each printing a PASS or
//! FAIL line (run with `--nocapture` to see them).

mod common;

use std::time::{Duration, Instant};

use common::{mixed_pair, MODELS};
use locbal::coloring::balanced_two_coloring;
use locbal::decompose::{choose_roots, decompose, RootStrategy};
use locbal::gen::{gen_forest, paper_example, GenConfig, GenModel};
use locbal::graph::ForestPair;
use locbal::multigraph::{BipartiteMultigraph, Side};
use locbal::oracle::{oracle_min_k, DEFAULT_ORACLE_LIMIT};
use locbal::solver::{solve, SolveConfig};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn conclude(criterion: &str, ok: bool, detail: String) {
    if ok {
        println!("criterion {criterion}: PASS ({detail})");
    } else {
        println!("criterion {criterion}: FAIL ({detail})");
        panic!("criterion {criterion} failed: {detail}");
    }
}

#[test]
fn criterion_1_paper_counterexample_lower_bound() {
    let pair = paper_example();
    let result = oracle_min_k(&pair, DEFAULT_ORACLE_LIMIT).unwrap();
    // best of three keeps scheduler noise out of a microsecond measurement
    let elapsed = (0..3)
        .map(|_| {
            let start = Instant::now();
            let _ = oracle_min_k(&pair, DEFAULT_ORACLE_LIMIT).unwrap();
            start.elapsed()
        })
        .min()
        .unwrap();
    let ok = result.k_min == 2 && result.enumerated == 16 && elapsed < Duration::from_millis(1);
    conclude(
        "1 (paper counterexample lower bound)",
        ok,
        format!(
            "k_min = {}, enumerated = {}, elapsed = {elapsed:?}",
            result.k_min, result.enumerated
        ),
    );
}

#[test]
fn criterion_2_guaranteed_upper_bound() {
    let start = Instant::now();
    let mut worst = 0;

    let example = solve(&paper_example(), &SolveConfig::default()).unwrap();
    worst = worst.max(example.report().achieved_k);

    for i in 0..10_000u64 {
        let n = 1 + (i % 12) as u32;
        let pair = mixed_pair(i, n);
        let strategy = if i % 2 == 0 {
            RootStrategy::MinId
        } else {
            RootStrategy::Seeded(i)
        };
        let solution = solve(
            &pair,
            &SolveConfig {
                root_strategy: strategy,
            },
        )
        .unwrap();
        worst = worst.max(solution.report().achieved_k);
    }
    let elapsed = start.elapsed();
    let ok = worst <= 2 && elapsed < Duration::from_secs(30);
    conclude(
        "2 (guaranteed upper bound, 10^4 pairs n in [1,12])",
        ok,
        format!("max achieved_k = {worst}, elapsed = {elapsed:?}"),
    );
}

#[test]
fn criterion_3_imported_coloring_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC01);
    let mut violations = 0u64;
    let mut checked_nodes = 0u64;
    for _ in 0..1000 {
        let left = rng.gen_range(1..=100u32);
        let right = rng.gen_range(1..=100u32);
        let m = rng.gen_range(0..=2000usize);
        let edges: Vec<(u32, u32)> = (0..m)
            .map(|_| (rng.gen_range(0..left), rng.gen_range(0..right)))
            .collect();
        let h = BipartiteMultigraph::new(left, right, edges).unwrap();
        let coloring = balanced_two_coloring(&h);
        for (side, count) in [(Side::Left, left), (Side::Right, right)] {
            for node in 0..count {
                let inc = h.incidence(side, node).unwrap();
                let ones: i64 = inc
                    .iter()
                    .map(|&e| i64::from(coloring.color(e as usize).unwrap()))
                    .sum();
                let balance = (2 * ones - inc.len() as i64).unsigned_abs() as u32;
                checked_nodes += 1;
                if balance != inc.len() as u32 % 2 {
                    violations += 1;
                }
            }
        }
    }
    conclude(
        "3 (imported coloring bound, 1000 multigraphs)",
        violations == 0,
        format!("{checked_nodes} node checks, {violations} parity violations"),
    );
}

/// Independent referee for criterion 4: enumerate all 2^n partitions with
/// no pruning, reading imbalances straight off the adjacency lists.
fn unpruned_min_k(pair: &ForestPair) -> u32 {
    let n = pair.vertex_count();
    let mut best = u32::MAX;
    for mask in 0u64..(1u64 << n) {
        let mut worst = 0u32;
        for forest in [pair.g1(), pair.g2()] {
            for v in 0..n {
                let mut ones = 0i64;
                let mut total = 0i64;
                for &w in forest.neighbors(v).unwrap() {
                    total += 1;
                    ones += ((mask >> w) & 1) as i64;
                }
                worst = worst.max((2 * ones - total).unsigned_abs() as u32);
            }
        }
        best = best.min(worst);
    }
    best
}

#[test]
fn criterion_4_oracle_cross_check() {
    let mut disagreements = 0u64;
    let mut order_violations = 0u64;
    for i in 0..10_000u64 {
        let n = 1 + (i % 10) as u32;
        let pair = mixed_pair(i.wrapping_mul(31).wrapping_add(7), n);
        let pruned = oracle_min_k(&pair, DEFAULT_ORACLE_LIMIT).unwrap();
        if pruned.k_min != unpruned_min_k(&pair) {
            disagreements += 1;
        }
        let achieved = solve(&pair, &SolveConfig::default())
            .unwrap()
            .report()
            .achieved_k;
        if !(pruned.k_min <= achieved && achieved <= 2) {
            order_violations += 1;
        }
    }
    conclude(
        "4 (oracle cross-check, 10^4 pairs n <= 10)",
        disagreements == 0 && order_violations == 0,
        format!("{disagreements} enumerator disagreements, {order_violations} ordering violations"),
    );
}

#[test]
fn criterion_5_decomposition_laws() {
    let mut bad = 0u64;
    for i in 0..1000u64 {
        let n = 1 + (i % 50) as u32;
        let forest = gen_forest(&GenConfig {
            n,
            component_count: None,
            seed: i.wrapping_mul(97),
            model: MODELS[(i % 4) as usize],
        })
        .unwrap();
        let strategy = if i % 3 == 0 {
            RootStrategy::MinId
        } else {
            RootStrategy::Seeded(i)
        };
        let d = decompose(&forest, &choose_roots(&forest, strategy)).unwrap();

        let mut covered = vec![false; n as usize];
        for members in d.groups() {
            if members.is_empty() {
                bad += 1;
            }
            for &v in members {
                if covered[v as usize] {
                    bad += 1;
                }
                covered[v as usize] = true;
            }
        }
        if !covered.iter().all(|&c| c) {
            bad += 1;
        }

        for v in 0..n {
            let children: &[u32] = match d.children_group(v).unwrap() {
                Some(g) => d.group(g).unwrap(),
                None => &[],
            };
            let outside = forest
                .neighbors(v)
                .unwrap()
                .iter()
                .filter(|w| !children.contains(w))
                .count();
            if outside > 1 {
                bad += 1;
            }
        }
    }
    conclude(
        "5 (decomposition laws, 1000 forests n <= 50)",
        bad == 0,
        format!("{bad} violations"),
    );
}

#[test]
fn criterion_6_scale() {
    let pair_of = |n: u32, seed: u64| {
        let g1 = gen_forest(&GenConfig {
            n,
            component_count: None,
            seed,
            model: GenModel::PruferTree,
        })
        .unwrap();
        let g2 = gen_forest(&GenConfig {
            n,
            component_count: None,
            seed: seed ^ 0xABCD,
            model: GenModel::UniformForest,
        })
        .unwrap();
        ForestPair::new(g1, g2).unwrap()
    };

    let small = pair_of(100_000, 5);
    let start = Instant::now();
    let small_solution = solve(&small, &SolveConfig::default()).unwrap();
    let small_elapsed = start.elapsed();

    let large = pair_of(1_000_000, 6);
    let start = Instant::now();
    let large_solution = solve(&large, &SolveConfig::default()).unwrap();
    let large_elapsed = start.elapsed();

    let ok = small_elapsed < Duration::from_secs(1)
        && large_elapsed < Duration::from_secs(10)
        && small_solution.report().achieved_k <= 2
        && large_solution.report().achieved_k <= 2;
    conclude(
        "6 (scale: n = 10^5 under 1 s, n = 10^6 under 10 s)",
        ok,
        format!(
            "10^5 in {small_elapsed:?} (k = {}), 10^6 in {large_elapsed:?} (k = {})",
            small_solution.report().achieved_k,
            large_solution.report().achieved_k
        ),
    );
}

#[test]
fn criterion_7_byte_determinism() {
    use std::process::Command;

    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| -> (Vec<u8>, Vec<u8>, Vec<u8>) {
        let instance = dir.path().join("instance.json");
        let solution = dir.path().join(format!("solution-{tag}.json"));
        let csv = dir.path().join(format!("rows-{tag}.csv"));
        let example = Command::new(env!("CARGO_BIN_EXE_locbal"))
            .arg("example")
            .output()
            .unwrap();
        std::fs::write(&instance, &example.stdout).unwrap();
        let solve = Command::new(env!("CARGO_BIN_EXE_locbal"))
            .args([
                "solve",
                instance.to_str().unwrap(),
                "--root-strategy",
                "seeded",
                "--seed",
                "42",
                "--out",
                solution.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert_eq!(solve.status.code(), Some(0));
        let experiment = Command::new(env!("CARGO_BIN_EXE_locbal"))
            .args([
                "experiment",
                "--count",
                "50",
                "--n",
                "9",
                "--seed",
                "77",
                "--oracle",
                "--csv",
                csv.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert_eq!(experiment.status.code(), Some(0));
        (
            std::fs::read(&solution).unwrap(),
            std::fs::read(&csv).unwrap(),
            experiment.stdout,
        )
    };

    let first = run("a");
    let second = run("b");
    let ok = first == second;
    conclude(
        "7 (byte determinism of solution and CSV outputs)",
        ok,
        format!(
            "solution bytes {}, csv bytes {}",
            if first.0 == second.0 {
                "identical"
            } else {
                "differ"
            },
            if first.1 == second.1 {
                "identical"
            } else {
                "differ"
            }
        ),
    );
}
