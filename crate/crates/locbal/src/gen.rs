//! Deterministic instance generators and the built-in tightness example.
//!
//! All randomness flows from a ChaCha8 stream keyed by the config's 64-bit
//! seed (via `SeedableRng::seed_from_u64`), so a seed pins a forest
//! exactly. Random labeled trees come from decoding a uniform Prüfer
//! sequence with the smallest-label-leaf rule; random forests delete tree
//! edges afterwards.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Forest, ForestPair, VertexId};

/// Edge deletion probability for `UniformForest` without a fixed component
/// count; arbitrary but pinned so fixtures stay portable.
pub const FOREST_EDGE_DELETION_P: f64 = 0.2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("vertex count must be at least 1")]
    EmptyVertexSet,
    #[error("component count {component_count} out of range 1..={n}")]
    ComponentCountOutOfRange { component_count: u32, n: u32 },
    #[error(
        "{model:?} always yields one component; component count {component_count} is impossible"
    )]
    ComponentCountUnsupported {
        model: GenModel,
        component_count: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenModel {
    /// Uniform random labeled tree (Prüfer decoding).
    PruferTree,
    /// Random tree with edges deleted: each independently with probability
    /// 0.2, or exactly `component_count - 1` uniformly chosen ones when a
    /// component count is requested.
    UniformForest,
    /// The path 0-1-...-(n-1).
    Path,
    /// The star with center 0.
    Star,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenConfig {
    pub n: u32,
    pub component_count: Option<u32>,
    pub seed: u64,
    pub model: GenModel,
}

/// Generates one forest; the same config always yields the same forest.
pub fn gen_forest(config: &GenConfig) -> Result<Forest, GenError> {
    let n = config.n;
    if n == 0 {
        return Err(GenError::EmptyVertexSet);
    }
    if let Some(c) = config.component_count {
        if c == 0 || c > n {
            return Err(GenError::ComponentCountOutOfRange {
                component_count: c,
                n,
            });
        }
        if c != 1 && !matches!(config.model, GenModel::UniformForest) {
            return Err(GenError::ComponentCountUnsupported {
                model: config.model,
                component_count: c,
            });
        }
    }

    let edges = match config.model {
        GenModel::Path => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
        GenModel::Star => (1..n).map(|v| (0, v)).collect(),
        GenModel::PruferTree => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            random_tree_edges(n, &mut rng)
        }
        GenModel::UniformForest => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let tree = random_tree_edges(n, &mut rng);
            match config.component_count {
                Some(c) => {
                    let mut drop = vec![false; tree.len()];
                    for i in sample(&mut rng, tree.len(), (c - 1) as usize) {
                        drop[i] = true;
                    }
                    tree.into_iter()
                        .zip(drop)
                        .filter_map(|(e, d)| (!d).then_some(e))
                        .collect()
                }
                None => tree
                    .into_iter()
                    .filter(|_| !rng.gen_bool(FOREST_EDGE_DELETION_P))
                    .collect(),
            }
        }
    };
    Ok(Forest::build(n, &edges).expect("generated edge lists are valid forests"))
}

/// Uniform random labeled tree on `0..n`: draw a Prüfer sequence of length
/// `n - 2` and decode it, always taking the smallest current leaf.
fn random_tree_edges(n: u32, rng: &mut ChaCha8Rng) -> Vec<(VertexId, VertexId)> {
    match n {
        0 | 1 => return vec![],
        2 => return vec![(0, 1)],
        _ => {}
    }
    let prufer: Vec<u32> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1u32; n as usize];
    for &a in &prufer {
        degree[a as usize] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<u32>> = (0..n)
        .filter(|&v| degree[v as usize] == 1)
        .map(Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n as usize - 1);
    for &a in &prufer {
        let Reverse(leaf) = leaves.pop().expect("decoding keeps a leaf available");
        edges.push((leaf, a));
        degree[leaf as usize] -= 1;
        degree[a as usize] -= 1;
        if degree[a as usize] == 1 {
            leaves.push(Reverse(a));
        }
    }
    let Reverse(u) = leaves.pop().expect("two leaves remain");
    let Reverse(v) = leaves.pop().expect("two leaves remain");
    edges.push((u, v));
    edges
}

/// The 5-vertex tightness instance: two paths sharing a vertex set, for
/// which no partition keeps every neighborhood imbalance below 2.
pub fn paper_example() -> ForestPair {
    let g1 = Forest::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).expect("static edge list");
    let g2 = Forest::build(5, &[(0, 4), (4, 3), (2, 1), (1, 0)]).expect("static edge list");
    ForestPair::new(g1, g2).expect("matching vertex counts")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_and_star_shapes() {
        let p = gen_forest(&GenConfig {
            n: 5,
            component_count: None,
            seed: 0,
            model: GenModel::Path,
        })
        .unwrap();
        assert_eq!(p.edges(), &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        let s = gen_forest(&GenConfig {
            n: 5,
            component_count: None,
            seed: 0,
            model: GenModel::Star,
        })
        .unwrap();
        assert_eq!(s.edges(), &[(0, 1), (0, 2), (0, 3), (0, 4)]);
    }

    #[test]
    fn prufer_tree_golden_and_valid() {
        let cfg = GenConfig {
            n: 8,
            component_count: None,
            seed: 42,
            model: GenModel::PruferTree,
        };
        let t = gen_forest(&cfg).unwrap();
        assert_eq!(t.component_count(), 1);
        // frozen from the pinned seed and decoder; a change here means the
        // stream or the decoding rule moved
        assert_eq!(
            t.edges(),
            &[(0, 5), (1, 4), (1, 6), (2, 5), (2, 7), (3, 5), (3, 6)]
        );
        assert_eq!(t, gen_forest(&cfg).unwrap());
    }

    #[test]
    fn uniform_forest_is_deterministic_and_valid() {
        let cfg = GenConfig {
            n: 30,
            component_count: None,
            seed: 7,
            model: GenModel::UniformForest,
        };
        let a = gen_forest(&cfg).unwrap();
        let b = gen_forest(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.edge_count() <= 29);
    }

    #[test]
    fn uniform_forest_hits_exact_component_count() {
        for c in 1..=10 {
            let f = gen_forest(&GenConfig {
                n: 10,
                component_count: Some(c),
                seed: 3,
                model: GenModel::UniformForest,
            })
            .unwrap();
            assert_eq!(f.component_count(), c);
        }
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let bad_n = GenConfig {
            n: 0,
            component_count: None,
            seed: 0,
            model: GenModel::Path,
        };
        assert_eq!(gen_forest(&bad_n).unwrap_err(), GenError::EmptyVertexSet);
        let bad_c = GenConfig {
            n: 4,
            component_count: Some(5),
            seed: 0,
            model: GenModel::UniformForest,
        };
        assert!(matches!(
            gen_forest(&bad_c).unwrap_err(),
            GenError::ComponentCountOutOfRange { .. }
        ));
        let tree_c = GenConfig {
            n: 4,
            component_count: Some(2),
            seed: 0,
            model: GenModel::PruferTree,
        };
        assert!(matches!(
            gen_forest(&tree_c).unwrap_err(),
            GenError::ComponentCountUnsupported { .. }
        ));
    }

    #[test]
    fn paper_example_shape() {
        let pair = paper_example();
        assert_eq!(pair.vertex_count(), 5);
        assert_eq!(pair.g1().edges(), &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(pair.g2().edges(), &[(0, 1), (0, 4), (1, 2), (3, 4)]);
        assert_eq!(pair.g1().component_count(), 1);
        assert_eq!(pair.g2().component_count(), 1);
    }
}
