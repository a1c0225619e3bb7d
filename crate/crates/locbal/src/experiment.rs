//! Batch runner: generate instances, solve them, optionally consult the
//! exhaustive oracle, and tabulate the results.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::gen::{gen_forest, GenConfig, GenError, GenModel};
use crate::graph::{ForestPair, GraphError};
use crate::oracle::{oracle_min_k, OracleError};
use crate::solver::{solve, SolveConfig, SolveError};

/// Seed salt separating the second forest's random stream from the first.
pub const G2_SEED_SALT: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Shape of one generated forest (the per-instance n and seed are filled in
/// by the runner).
#[derive(Debug, Clone, Copy)]
pub struct GenSpec {
    pub model: GenModel,
    pub component_count: Option<u32>,
}

/// Where the batch's instances come from: freshly generated pairs, or one
/// fixed pair run repeatedly.
#[derive(Debug, Clone)]
pub enum InstanceSource {
    Generated { g1: GenSpec, g2: GenSpec },
    Fixed(ForestPair),
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub count: u64,
    pub n: u32,
    pub source: InstanceSource,
    pub base_seed: u64,
    pub with_oracle: bool,
    pub oracle_limit: u32,
    pub solve: SolveConfig,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentRow {
    pub seed: u64,
    pub n: u32,
    pub achieved_k: u32,
    pub k_min: Option<u32>,
}

/// Histograms over the batch and the count of rows where the solver did not
/// reach the oracle's optimum.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExperimentSummary {
    pub achieved_k_hist: BTreeMap<u32, u64>,
    pub k_min_hist: BTreeMap<u32, u64>,
    pub above_optimum: u64,
}

/// Runs the batch; instance `i` uses seed `base_seed + i`, and rows come
/// back in that order.
pub fn run(
    config: &ExperimentConfig,
) -> Result<(Vec<ExperimentRow>, ExperimentSummary), ExperimentError> {
    let mut rows = Vec::with_capacity(config.count as usize);
    let mut summary = ExperimentSummary::default();
    for i in 0..config.count {
        let seed = config.base_seed.wrapping_add(i);
        let pair = match &config.source {
            InstanceSource::Fixed(pair) => pair.clone(),
            InstanceSource::Generated { g1, g2 } => {
                let f1 = gen_forest(&GenConfig {
                    n: config.n,
                    component_count: g1.component_count,
                    seed,
                    model: g1.model,
                })?;
                let f2 = gen_forest(&GenConfig {
                    n: config.n,
                    component_count: g2.component_count,
                    seed: seed ^ G2_SEED_SALT,
                    model: g2.model,
                })?;
                ForestPair::new(f1, f2)?
            }
        };
        let achieved_k = solve(&pair, &config.solve)?.report().achieved_k;
        let k_min = if config.with_oracle {
            Some(oracle_min_k(&pair, config.oracle_limit)?.k_min)
        } else {
            None
        };
        *summary.achieved_k_hist.entry(achieved_k).or_default() += 1;
        if let Some(k) = k_min {
            *summary.k_min_hist.entry(k).or_default() += 1;
            if achieved_k > k {
                summary.above_optimum += 1;
            }
        }
        rows.push(ExperimentRow {
            seed,
            n: pair.vertex_count(),
            achieved_k,
            k_min,
        });
    }
    Ok((rows, summary))
}

/// Renders rows as CSV: header `seed,n,achieved_k,k_min`, LF line endings,
/// `k_min` left empty when the oracle was skipped.
pub fn rows_to_csv(rows: &[ExperimentRow]) -> String {
    let mut out = String::from("seed,n,achieved_k,k_min\n");
    for row in rows {
        let _ = write!(out, "{},{},{},", row.seed, row.n, row.achieved_k);
        if let Some(k) = row.k_min {
            let _ = write!(out, "{k}");
        }
        out.push('\n');
    }
    out
}

impl ExperimentSummary {
    /// Plain-text rendering used by the command line.
    pub fn render(&self) -> String {
        fn hist_line(hist: &BTreeMap<u32, u64>) -> String {
            if hist.is_empty() {
                return "(empty)".to_string();
            }
            hist.iter()
                .map(|(k, count)| format!("{k}:{count}"))
                .collect::<Vec<_>>()
                .join(" ")
        }
        let mut out = String::new();
        let _ = writeln!(
            out,
            "achieved_k histogram: {}",
            hist_line(&self.achieved_k_hist)
        );
        let _ = writeln!(out, "k_min histogram: {}", hist_line(&self.k_min_hist));
        let _ = writeln!(out, "rows with achieved_k > k_min: {}", self.above_optimum);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::paper_example;

    fn generated(model: GenModel) -> InstanceSource {
        InstanceSource::Generated {
            g1: GenSpec {
                model,
                component_count: None,
            },
            g2: GenSpec {
                model,
                component_count: None,
            },
        }
    }

    #[test]
    fn oracle_batch_respects_both_bounds() {
        let (rows, summary) = run(&ExperimentConfig {
            count: 100,
            n: 8,
            source: generated(GenModel::PruferTree),
            base_seed: 1000,
            with_oracle: true,
            oracle_limit: 24,
            solve: SolveConfig::default(),
        })
        .unwrap();
        assert_eq!(rows.len(), 100);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.seed, 1000 + i as u64);
            let k_min = row.k_min.unwrap();
            assert!(k_min <= row.achieved_k);
            assert!(row.achieved_k <= 2);
        }
        let total: u64 = summary.achieved_k_hist.values().sum();
        assert_eq!(total, 100);
    }

    #[test]
    fn empty_batch() {
        let (rows, summary) = run(&ExperimentConfig {
            count: 0,
            n: 8,
            source: generated(GenModel::UniformForest),
            base_seed: 0,
            with_oracle: false,
            oracle_limit: 24,
            solve: SolveConfig::default(),
        })
        .unwrap();
        assert!(rows.is_empty());
        assert_eq!(summary, ExperimentSummary::default());
    }

    #[test]
    fn fixed_paper_instance_row() {
        let (rows, summary) = run(&ExperimentConfig {
            count: 1,
            n: 5,
            source: InstanceSource::Fixed(paper_example()),
            base_seed: 9,
            with_oracle: true,
            oracle_limit: 24,
            solve: SolveConfig::default(),
        })
        .unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].achieved_k, 2);
        assert_eq!(rows[0].k_min, Some(2));
        assert_eq!(summary.above_optimum, 0);
    }

    #[test]
    fn csv_shape() {
        let rows = vec![
            ExperimentRow {
                seed: 7,
                n: 5,
                achieved_k: 2,
                k_min: Some(2),
            },
            ExperimentRow {
                seed: 8,
                n: 5,
                achieved_k: 1,
                k_min: None,
            },
        ];
        assert_eq!(
            rows_to_csv(&rows),
            "seed,n,achieved_k,k_min\n7,5,2,2\n8,5,1,\n"
        );
    }
}
