//! Cross-module invariant suites: the laws each stage promises, checked on
//! randomized inputs, at sizes large enough to shake out structural bugs.

mod common;

use proptest::prelude::*;

use common::{mixed_pair, MODELS};
use locbal::coloring::balanced_two_coloring;
use locbal::decompose::{choose_roots, decompose, RootStrategy};
use locbal::gen::{gen_forest, paper_example, GenConfig, GenModel};
use locbal::graph::{discrepancy, Forest, ForestPair, VertexPartition};
use locbal::io::{format_instance, parse_instance};
use locbal::multigraph::{build_aux, BipartiteMultigraph, Side};
use locbal::oracle::oracle_min_k;
use locbal::solver::{solve, verify, ForestSide, SolveConfig};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arb_forest() -> impl Strategy<Value = Forest> {
    (1u32..40, any::<u64>(), 0usize..4).prop_map(|(n, seed, m)| {
        gen_forest(&GenConfig {
            n,
            component_count: None,
            seed,
            model: MODELS[m],
        })
        .expect("valid config")
    })
}

proptest! {
    #[test]
    fn rebuilding_a_forest_reproduces_its_edges(forest in arb_forest(), shuffle_seed in any::<u64>()) {
        // feed the edges back in scrambled orientation and order
        let mut rng = ChaCha8Rng::seed_from_u64(shuffle_seed);
        let mut edges: Vec<(u32, u32)> = forest
            .edges()
            .iter()
            .map(|&(a, b)| if rng.gen_bool(0.5) { (b, a) } else { (a, b) })
            .collect();
        for i in (1..edges.len()).rev() {
            edges.swap(i, rng.gen_range(0..=i));
        }
        let rebuilt = Forest::build(forest.vertex_count(), &edges).unwrap();
        prop_assert_eq!(rebuilt.edges(), forest.edges());
    }

    #[test]
    fn discrepancy_laws(bits in prop::collection::vec(0u8..2, 1..60), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..30)) {
        let n = bits.len();
        let partition = VertexPartition::from_bits(bits).unwrap();
        let mut subset: Vec<u32> = picks.iter().map(|ix| ix.index(n) as u32).collect();
        subset.sort_unstable();
        subset.dedup();
        let b = discrepancy(&partition, &subset).unwrap();
        prop_assert_eq!(b as usize % 2, subset.len() % 2);
        prop_assert!(b as usize <= subset.len());
        prop_assert_eq!(discrepancy(&partition.flipped(), &subset).unwrap(), b);
    }

    #[test]
    fn instance_documents_round_trip(i in any::<u64>(), n in 1u32..60) {
        let pair = mixed_pair(i, n);
        prop_assert_eq!(parse_instance(&format_instance(&pair)).unwrap(), pair);
    }

    #[test]
    fn aux_graph_is_a_vertex_edge_bijection(i in any::<u64>(), n in 1u32..50) {
        let pair = mixed_pair(i, n);
        let d1 = decompose(pair.g1(), &choose_roots(pair.g1(), RootStrategy::MinId)).unwrap();
        let d2 = decompose(pair.g2(), &choose_roots(pair.g2(), RootStrategy::MinId)).unwrap();
        let h = build_aux(&d1, &d2).unwrap();
        prop_assert_eq!(h.edge_count(), n as usize);
        for v in 0..n {
            let e = h.edge(v).unwrap();
            prop_assert_eq!(e.label, v);
            prop_assert!(d1.group(e.left as usize).unwrap().contains(&v));
            prop_assert!(d2.group(e.right as usize).unwrap().contains(&v));
        }
        // node degree = group cardinality, and both sides sum to n
        for (side, d) in [(Side::Left, &d1), (Side::Right, &d2)] {
            let mut total = 0u32;
            for (g, members) in d.groups().enumerate() {
                let deg = h.node_degree(side, g as u32).unwrap();
                prop_assert_eq!(deg as usize, members.len());
                total += deg;
            }
            prop_assert_eq!(total, n);
        }
    }

    #[test]
    fn coloring_and_its_flip_obey_the_parity_law(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let left = rng.gen_range(1..30);
        let right = rng.gen_range(1..30);
        let m = rng.gen_range(0..200);
        let edges: Vec<(u32, u32)> = (0..m)
            .map(|_| (rng.gen_range(0..left), rng.gen_range(0..right)))
            .collect();
        let h = BipartiteMultigraph::new(left, right, edges).unwrap();
        let coloring = balanced_two_coloring(&h);
        let flipped: Vec<u8> = coloring.bits().iter().map(|b| 1 - b).collect();
        for (side, count) in [(Side::Left, left), (Side::Right, right)] {
            for node in 0..count {
                let inc = h.incidence(side, node).unwrap();
                let ones: i64 = inc.iter().map(|&e| i64::from(coloring.color(e as usize).unwrap())).sum();
                let balance = (2 * ones - inc.len() as i64).unsigned_abs() as u32;
                prop_assert_eq!(balance, inc.len() as u32 % 2);
                let flipped_ones: i64 = inc.iter().map(|&e| i64::from(flipped[e as usize])).sum();
                let flipped_balance = (2 * flipped_ones - inc.len() as i64).unsigned_abs() as u32;
                prop_assert_eq!(flipped_balance, balance);
            }
        }
    }
}

#[test]
fn decomposition_laws_on_random_forests() {
    for i in 0..1000u64 {
        let n = 1 + (i % 50) as u32;
        let forest = gen_forest(&GenConfig {
            n,
            component_count: None,
            seed: i,
            model: MODELS[(i % 4) as usize],
        })
        .unwrap();
        let strategy = if i % 2 == 0 {
            RootStrategy::MinId
        } else {
            RootStrategy::Seeded(i)
        };
        let d = decompose(&forest, &choose_roots(&forest, strategy)).unwrap();

        // groups partition the vertex set and are never empty
        let mut owner = vec![usize::MAX; n as usize];
        for (g, members) in d.groups().enumerate() {
            assert!(!members.is_empty());
            for &v in members {
                assert_eq!(owner[v as usize], usize::MAX, "vertex {v} in two groups");
                owner[v as usize] = g;
            }
        }
        assert!(owner.iter().all(|&g| g != usize::MAX));

        // |neighborhood minus children group| <= 1, and the leftover is the parent
        for v in 0..n {
            let children: &[u32] = match d.children_group(v).unwrap() {
                Some(g) => d.group(g).unwrap(),
                None => &[],
            };
            let leftover: Vec<u32> = forest
                .neighbors(v)
                .unwrap()
                .iter()
                .copied()
                .filter(|w| !children.contains(w))
                .collect();
            assert!(leftover.len() <= 1);
            match d.parent(v).unwrap() {
                Some(p) => assert_eq!(leftover, vec![p]),
                None => assert!(leftover.is_empty()),
            }
        }

        // group count bookkeeping and level structure
        let with_children = (0..n)
            .filter(|&v| d.children_group(v).unwrap().is_some())
            .count();
        assert_eq!(
            d.group_count(),
            d.component_count() as usize + with_children
        );
        for (c, &root) in d.roots().iter().enumerate() {
            assert_eq!(d.level(root).unwrap(), 0);
            assert!(d.max_level(c).is_some());
        }
        for v in 0..n {
            match d.parent(v).unwrap() {
                Some(p) => assert_eq!(d.level(v).unwrap(), d.level(p).unwrap() + 1),
                None => assert_eq!(d.level(v).unwrap(), 0),
            }
        }
        let observed_max: Vec<u32> = {
            let mut m = vec![0u32; d.roots().len()];
            for v in 0..n {
                // walk to the root to find the component index
                let mut u = v;
                while let Some(p) = d.parent(u).unwrap() {
                    u = p;
                }
                let c = d.roots().iter().position(|&r| r == u).unwrap();
                m[c] = m[c].max(d.level(v).unwrap());
            }
            m
        };
        for (c, &m) in observed_max.iter().enumerate() {
            assert_eq!(d.max_level(c), Some(m));
        }
    }
}

#[test]
fn guarantee_and_internal_consistency_on_small_pairs() {
    // solve + oracle agree with the guarantee on ten thousand mixed pairs
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
        let report = solution.report();
        assert!(report.achieved_k <= 2, "bound violated at instance {i}");

        // the independent referee reproduces the solver's report
        let checked = verify(&pair, solution.partition()).unwrap();
        assert_eq!(
            &checked, report,
            "solve and verify disagree at instance {i}"
        );

        // flip symmetry
        let flipped = verify(&pair, &solution.partition().flipped()).unwrap();
        assert_eq!(&flipped, report);

        // per-vertex imbalances carry the degree parity
        for v in 0..n {
            let d1 = pair.g1().degree(v).unwrap();
            let d2 = pair.g2().degree(v).unwrap();
            assert_eq!(report.per_vertex_b1[v as usize] % 2, d1 % 2);
            assert_eq!(report.per_vertex_b2[v as usize] % 2, d2 % 2);
        }

        // every sibling group is balanced to within one
        for side in [ForestSide::G1, ForestSide::G2] {
            for members in solution.decomposition(side).groups() {
                assert!(discrepancy(solution.partition(), members).unwrap() <= 1);
            }
        }

        // the exhaustive optimum never exceeds 2 and bounds the solver from below
        let oracle = oracle_min_k(&pair, 24).unwrap();
        assert!(oracle.k_min <= 2);
        assert!(oracle.k_min <= report.achieved_k);
        assert_eq!(
            verify(&pair, &oracle.witness).unwrap().achieved_k,
            oracle.k_min
        );
    }
}

#[test]
fn guarantee_holds_on_large_pairs() {
    for i in 0..100u64 {
        let n = 1000 + (i as u32 * 91) % 9001;
        let pair = mixed_pair(i, n);
        let solution = solve(&pair, &SolveConfig::default()).unwrap();
        assert!(solution.report().achieved_k <= 2);
        let checked = verify(&pair, solution.partition()).unwrap();
        assert_eq!(&checked, solution.report());
    }
}

#[test]
fn core_values_move_freely_between_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<Forest>();
    assert_send_sync::<ForestPair>();
    assert_send_sync::<VertexPartition>();
    assert_send_sync::<locbal::RootedDecomposition>();
    assert_send_sync::<locbal::AuxBipartiteMultigraph>();
    assert_send_sync::<locbal::EdgeColoring>();
    assert_send_sync::<locbal::Solution>();
}

#[test]
fn solver_is_deterministic() {
    let pair = paper_example();
    let a = solve(&pair, &SolveConfig::default()).unwrap();
    let b = solve(&pair, &SolveConfig::default()).unwrap();
    assert_eq!(a.partition(), b.partition());
    assert_eq!(a.report(), b.report());

    let seeded = SolveConfig {
        root_strategy: RootStrategy::Seeded(99),
    };
    let c = solve(&pair, &seeded).unwrap();
    let d = solve(&pair, &seeded).unwrap();
    assert_eq!(c.partition(), d.partition());
}

#[test]
fn generated_forests_always_validate() {
    for i in 0..400u64 {
        let n = 1 + (i % 64) as u32;
        for model in MODELS {
            let component_count = match model {
                GenModel::UniformForest if i % 3 == 0 => Some(1 + (i as u32 % n)),
                _ => None,
            };
            let forest = gen_forest(&GenConfig {
                n,
                component_count,
                seed: i,
                model,
            })
            .unwrap();
            // rebuilding through the validator is the validity check
            assert_eq!(
                Forest::build(n, forest.edges()).unwrap().edges(),
                forest.edges()
            );
            if let Some(c) = component_count {
                assert_eq!(forest.component_count(), c);
            }
        }
    }
}

#[test]
fn oracle_matches_on_forests_with_isolated_vertices() {
    // decomposition + oracle on pairs that are mostly isolated vertices
    for i in 0..50u64 {
        let n = 6;
        let g1 = gen_forest(&GenConfig {
            n,
            component_count: Some(1 + (i as u32 % n)),
            seed: i,
            model: GenModel::UniformForest,
        })
        .unwrap();
        let g2 = gen_forest(&GenConfig {
            n,
            component_count: Some(1 + ((i / 2) as u32 % n)),
            seed: i + 1000,
            model: GenModel::UniformForest,
        })
        .unwrap();
        let pair = ForestPair::new(g1, g2).unwrap();
        let solution = solve(&pair, &SolveConfig::default()).unwrap();
        let oracle = oracle_min_k(&pair, 24).unwrap();
        assert!(oracle.k_min <= solution.report().achieved_k);
        assert!(solution.report().achieved_k <= 2);
    }
}
