//! Forests, vertex 2-partitions, and the imbalance measure scoring them.
//!
//! A [`Forest`] is a loopless acyclic undirected graph on the dense vertex
//! set `0..n`. A [`VertexPartition`] assigns each vertex a bit, and
//! [`discrepancy`] measures how unevenly the two parts meet a vertex subset:
//! the absolute difference between the number of 1-vertices and 0-vertices
//! in the subset. The solver's whole job is to keep this number at most 2
//! on every neighborhood of two forests at once.

use thiserror::Error;

/// Dense vertex identifier in `0..vertex_count`.
pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({vertex}, {vertex}) is a loop")]
    LoopEdge { vertex: VertexId },
    #[error("edge ({a}, {b}) appears more than once")]
    DuplicateEdge { a: VertexId, b: VertexId },
    #[error("vertex {vertex} out of range (vertex count {vertex_count})")]
    VertexOutOfRange { vertex: VertexId, vertex_count: u32 },
    #[error("edge ({a}, {b}) closes a cycle")]
    CycleDetected { a: VertexId, b: VertexId },
    #[error("partition bit at index {index} is {value}, expected 0 or 1")]
    InvalidPartitionBit { index: usize, value: u8 },
    #[error("forests have different vertex counts ({g1} vs {g2})")]
    VertexCountMismatch { g1: u32, g2: u32 },
}

/// Loopless acyclic undirected graph on vertices `0..vertex_count`.
///
/// Edges are normalized to `(min, max)` and kept sorted; the adjacency of
/// each vertex is sorted ascending. Both orderings make every downstream
/// traversal reproducible. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    vertex_count: u32,
    edges: Vec<(VertexId, VertexId)>,
    adj_off: Vec<u32>,
    adj: Vec<VertexId>,
    component_count: u32,
}

impl Forest {
    /// Validates and builds a forest from an edge list.
    ///
    /// Rejects loops, duplicate edges (in either orientation), endpoints
    /// outside `0..vertex_count`, and any edge that would close a cycle.
    pub fn build(vertex_count: u32, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let n = vertex_count;
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        vertex_count: n,
                    });
                }
            }
            if a == b {
                return Err(GraphError::LoopEdge { vertex: a });
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        for w in normalized.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge {
                    a: w[0].0,
                    b: w[0].1,
                });
            }
        }

        let mut dsu = DisjointSets::new(n as usize);
        for &(a, b) in &normalized {
            if !dsu.union(a as usize, b as usize) {
                return Err(GraphError::CycleDetected { a, b });
            }
        }

        // Two passes over the sorted edge list fill each adjacency bucket in
        // ascending order: first the neighbors smaller than the vertex, then
        // the larger ones.
        let mut adj_off = vec![0u32; n as usize + 1];
        for &(a, b) in &normalized {
            adj_off[a as usize + 1] += 1;
            adj_off[b as usize + 1] += 1;
        }
        for i in 0..n as usize {
            adj_off[i + 1] += adj_off[i];
        }
        let mut adj = vec![0u32; normalized.len() * 2];
        let mut cursor: Vec<u32> = adj_off[..n as usize].to_vec();
        for &(a, b) in &normalized {
            adj[cursor[b as usize] as usize] = a;
            cursor[b as usize] += 1;
        }
        for &(a, b) in &normalized {
            adj[cursor[a as usize] as usize] = b;
            cursor[a as usize] += 1;
        }

        let component_count = n - normalized.len() as u32;
        Ok(Forest {
            vertex_count: n,
            edges: normalized,
            adj_off,
            adj,
            component_count,
        })
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges normalized to `(min, max)`, sorted ascending.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn component_count(&self) -> u32 {
        self.component_count
    }

    /// The neighborhood of `v`, sorted ascending.
    pub fn neighbors(&self, v: VertexId) -> Result<&[VertexId], GraphError> {
        if v >= self.vertex_count {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            });
        }
        Ok(self.neighbors_unchecked(v))
    }

    pub fn degree(&self, v: VertexId) -> Result<u32, GraphError> {
        Ok(self.neighbors(v)?.len() as u32)
    }

    pub(crate) fn neighbors_unchecked(&self, v: VertexId) -> &[VertexId] {
        let lo = self.adj_off[v as usize] as usize;
        let hi = self.adj_off[v as usize + 1] as usize;
        &self.adj[lo..hi]
    }
}

/// Two forests over one shared vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestPair {
    g1: Forest,
    g2: Forest,
}

impl ForestPair {
    pub fn new(g1: Forest, g2: Forest) -> Result<Self, GraphError> {
        if g1.vertex_count != g2.vertex_count {
            return Err(GraphError::VertexCountMismatch {
                g1: g1.vertex_count,
                g2: g2.vertex_count,
            });
        }
        Ok(ForestPair { g1, g2 })
    }

    pub fn vertex_count(&self) -> u32 {
        self.g1.vertex_count
    }

    pub fn g1(&self) -> &Forest {
        &self.g1
    }

    pub fn g2(&self) -> &Forest {
        &self.g2
    }
}

/// A 2-partition of the vertex set: one bit per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    bits: Vec<u8>,
}

impl VertexPartition {
    /// Builds a partition from explicit bits, rejecting anything but 0 or 1.
    pub fn from_bits(bits: Vec<u8>) -> Result<Self, GraphError> {
        for (index, &value) in bits.iter().enumerate() {
            if value > 1 {
                return Err(GraphError::InvalidPartitionBit { index, value });
            }
        }
        Ok(VertexPartition { bits })
    }

    pub(crate) fn from_raw(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        VertexPartition { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, v: VertexId) -> Option<u8> {
        self.bits.get(v as usize).copied()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// The complementary partition (every bit flipped). Discrepancies are
    /// invariant under this move.
    pub fn flipped(&self) -> Self {
        VertexPartition {
            bits: self.bits.iter().map(|b| 1 - b).collect(),
        }
    }
}

/// Absolute difference between the sizes of the two parts within `subset`.
pub fn discrepancy(partition: &VertexPartition, subset: &[VertexId]) -> Result<u32, GraphError> {
    let n = partition.bits.len();
    let mut ones: i64 = 0;
    for &v in subset {
        if v as usize >= n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                vertex_count: n as u32,
            });
        }
        ones += i64::from(partition.bits[v as usize]);
    }
    Ok((2 * ones - subset.len() as i64).unsigned_abs() as u32)
}

/// Union-find with path halving; used only to reject cyclic edge lists.
struct DisjointSets {
    parent: Vec<u32>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grandparent = self.parent[self.parent[x] as usize];
            self.parent[x] = grandparent;
            x = grandparent as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb as u32;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u32) -> Forest {
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Forest::build(n, &edges).unwrap()
    }

    #[test]
    fn builds_path_forest() {
        let f = path(5);
        assert_eq!(f.vertex_count(), 5);
        assert_eq!(f.edge_count(), 4);
        assert_eq!(f.component_count(), 1);
    }

    #[test]
    fn builds_edgeless_forest() {
        let f = Forest::build(3, &[]).unwrap();
        assert_eq!(f.component_count(), 3);
        assert_eq!(f.edge_count(), 0);
    }

    #[test]
    fn rejects_triangle() {
        let err = Forest::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert!(matches!(err, GraphError::CycleDetected { .. }));
    }

    #[test]
    fn rejects_loop() {
        let err = Forest::build(3, &[(1, 1)]).unwrap_err();
        assert_eq!(err, GraphError::LoopEdge { vertex: 1 });
    }

    #[test]
    fn rejects_duplicate_even_reversed() {
        let err = Forest::build(3, &[(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err, GraphError::DuplicateEdge { a: 0, b: 1 });
    }

    #[test]
    fn rejects_out_of_range() {
        let err = Forest::build(3, &[(0, 3)]).unwrap_err();
        assert_eq!(
            err,
            GraphError::VertexOutOfRange {
                vertex: 3,
                vertex_count: 3
            }
        );
    }

    #[test]
    fn neighbors_of_path_interior() {
        let f = path(5);
        assert_eq!(f.neighbors(2).unwrap(), &[1, 3]);
    }

    #[test]
    fn neighbors_of_isolated_vertex() {
        let f = Forest::build(3, &[]).unwrap();
        assert_eq!(f.neighbors(0).unwrap(), &[] as &[VertexId]);
    }

    #[test]
    fn neighbors_of_star_center() {
        let f = Forest::build(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(f.neighbors(0).unwrap(), &[1, 2, 3, 4]);
        assert!(matches!(
            f.neighbors(5),
            Err(GraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn adjacency_is_sorted_and_mirrors_edges() {
        let f = Forest::build(6, &[(4, 1), (1, 0), (5, 1), (2, 1)]).unwrap();
        assert_eq!(f.neighbors(1).unwrap(), &[0, 2, 4, 5]);
        assert_eq!(f.edges(), &[(0, 1), (1, 2), (1, 4), (1, 5)]);
    }

    #[test]
    fn discrepancy_matches_hand_counts() {
        let p = VertexPartition::from_bits(vec![0, 1, 1, 1, 0]).unwrap();
        assert_eq!(discrepancy(&p, &[1, 3]).unwrap(), 2);
        assert_eq!(discrepancy(&p, &[]).unwrap(), 0);
        let q = VertexPartition::from_bits(vec![0, 1]).unwrap();
        assert_eq!(discrepancy(&q, &[0, 1]).unwrap(), 0);
    }

    #[test]
    fn discrepancy_rejects_out_of_range_ids() {
        let p = VertexPartition::from_bits(vec![0, 1]).unwrap();
        assert!(matches!(
            discrepancy(&p, &[2]),
            Err(GraphError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn partition_rejects_non_bits() {
        let err = VertexPartition::from_bits(vec![0, 2]).unwrap_err();
        assert_eq!(err, GraphError::InvalidPartitionBit { index: 1, value: 2 });
    }

    #[test]
    fn pair_requires_equal_vertex_counts() {
        let a = Forest::build(2, &[]).unwrap();
        let b = Forest::build(3, &[]).unwrap();
        assert!(matches!(
            ForestPair::new(a, b),
            Err(GraphError::VertexCountMismatch { g1: 2, g2: 3 })
        ));
    }
}
