//! Shared builders for the integration suites.

use locbal::gen::{gen_forest, GenConfig, GenModel};
use locbal::graph::ForestPair;

pub const MODELS: [GenModel; 4] = [
    GenModel::PruferTree,
    GenModel::UniformForest,
    GenModel::Path,
    GenModel::Star,
];

/// Deterministic mixed-model pair: instance `i` picks the two models and
/// seeds from `i` alone.
pub fn mixed_pair(i: u64, n: u32) -> ForestPair {
    let g1 = gen_forest(&GenConfig {
        n,
        component_count: None,
        seed: i,
        model: MODELS[(i % 4) as usize],
    })
    .expect("valid config");
    let g2 = gen_forest(&GenConfig {
        n,
        component_count: None,
        seed: i ^ 0xD1B5_4A32_D192_ED03,
        model: MODELS[((i / 4) % 4) as usize],
    })
    .expect("valid config");
    ForestPair::new(g1, g2).expect("same vertex count")
}
