//! Exhaustive minimum-k oracle for small instances.
//!
//! Enumerates every 2-partition of the vertex set with the first vertex
//! pinned to part 0 (imbalances are invariant under flipping all bits, so
//! this halves the space losslessly) and returns the exact minimum of the
//! worst neighborhood imbalance, with the first optimal witness in
//! lexicographic bit order.

use thiserror::Error;

use crate::graph::{ForestPair, VertexPartition};

/// Default cap on instance size; the search is exponential.
pub const DEFAULT_ORACLE_LIMIT: u32 = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {n} vertices, above the exhaustive-search limit {limit}")]
    TooLarge { n: u32, limit: u32 },
}

/// Outcome of an exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Smallest achievable worst-case neighborhood imbalance.
    pub k_min: u32,
    /// First partition attaining it, in lexicographic bit order.
    pub witness: VertexPartition,
    /// Number of partitions examined.
    pub enumerated: u64,
}

/// Exhaustively computes the minimum achievable k for a pair.
///
/// Masks are 64-bit, so `n` is additionally capped at 63 regardless of
/// `n_limit`.
pub fn oracle_min_k(pair: &ForestPair, n_limit: u32) -> Result<OracleResult, OracleError> {
    let n = pair.vertex_count();
    let limit = n_limit.min(63);
    if n > limit {
        return Err(OracleError::TooLarge { n, limit });
    }
    if n == 0 {
        return Ok(OracleResult {
            k_min: 0,
            witness: VertexPartition::from_raw(vec![]),
            enumerated: 1,
        });
    }

    // Neighborhood bitmasks make one partition check a handful of popcounts.
    let masks_degrees = |forest: &crate::graph::Forest| -> Vec<(u64, i64)> {
        (0..n)
            .map(|v| {
                let nbrs = forest.neighbors_unchecked(v);
                let mask = nbrs.iter().fold(0u64, |m, &w| m | (1u64 << w));
                (mask, nbrs.len() as i64)
            })
            .collect()
    };
    let m1 = masks_degrees(pair.g1());
    let m2 = masks_degrees(pair.g2());

    let worst = |bits: u64| -> u32 {
        let mut worst = 0;
        for (mask, degree) in m1.iter().chain(m2.iter()) {
            let ones = (bits & mask).count_ones() as i64;
            worst = worst.max((2 * ones - degree).unsigned_abs() as u32);
        }
        worst
    };

    // Lexicographic order over bit vectors (vertex 0 first) corresponds to
    // counting up when vertex i maps to mask bit n-1-i; vertex 0 stays 0.
    let total: u64 = 1u64 << (n - 1);
    let mut best_k = u32::MAX;
    let mut best_mask = 0u64;
    for m in 0..total {
        let mut bits = 0u64;
        for i in 1..n {
            bits |= ((m >> (n - 1 - i)) & 1) << i;
        }
        let k = worst(bits);
        if k < best_k {
            best_k = k;
            best_mask = bits;
        }
    }

    let witness = VertexPartition::from_raw((0..n).map(|v| ((best_mask >> v) & 1) as u8).collect());
    Ok(OracleResult {
        k_min: best_k,
        witness,
        enumerated: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::paper_example;
    use crate::graph::{Forest, ForestPair};
    use crate::solver::verify;

    #[test]
    fn paper_example_needs_two() {
        let pair = paper_example();
        let result = oracle_min_k(&pair, DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(result.k_min, 2);
        assert_eq!(result.enumerated, 16);
        // all-zeros already achieves 2, so it is the lexicographic witness
        assert_eq!(result.witness.bits(), &[0, 0, 0, 0, 0]);
        assert_eq!(verify(&pair, &result.witness).unwrap().achieved_k, 2);
    }

    #[test]
    fn single_edge_pair() {
        let f = Forest::build(2, &[(0, 1)]).unwrap();
        let pair = ForestPair::new(f.clone(), f).unwrap();
        let result = oracle_min_k(&pair, DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(result.k_min, 1);
        assert_eq!(result.enumerated, 2);
        assert_eq!(result.witness.bits(), &[0, 0]);
    }

    #[test]
    fn edgeless_pair_needs_nothing() {
        let f = Forest::build(4, &[]).unwrap();
        let pair = ForestPair::new(f.clone(), f).unwrap();
        let result = oracle_min_k(&pair, DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(result.k_min, 0);
        assert_eq!(result.witness.bits(), &[0, 0, 0, 0]);
    }

    #[test]
    fn oversized_instances_are_rejected() {
        let f = Forest::build(25, &[]).unwrap();
        let pair = ForestPair::new(f.clone(), f).unwrap();
        assert_eq!(
            oracle_min_k(&pair, DEFAULT_ORACLE_LIMIT).unwrap_err(),
            OracleError::TooLarge { n: 25, limit: 24 }
        );
        // raising the limit admits the instance
        assert!(oracle_min_k(&pair, 25).is_ok());
    }

    #[test]
    fn witness_report_matches_k_min() {
        let pair = paper_example();
        let result = oracle_min_k(&pair, DEFAULT_ORACLE_LIMIT).unwrap();
        let report = verify(&pair, &result.witness).unwrap();
        assert_eq!(report.achieved_k, result.k_min);
    }
}
