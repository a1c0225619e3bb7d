//! Bipartite multigraphs and the auxiliary graph tying two forest
//! decompositions together.
//!
//! The auxiliary graph has the groups of the first decomposition as left
//! nodes and the groups of the second as right nodes. Every shared vertex
//! `v` contributes exactly one edge, joining the group containing `v` on
//! each side; the edge index *is* the vertex id, so the correspondence
//! between vertices and edges is an array lookup in both directions.
//! Parallel edges are kept as distinct records, never collapsed.

use thiserror::Error;

use crate::decompose::RootedDecomposition;
use crate::graph::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultigraphError {
    #[error("decompositions cover different vertex counts ({left} vs {right})")]
    VertexCountMismatch { left: u32, right: u32 },
    #[error("{side:?} node {node} out of range (count {count})")]
    NodeOutOfRange { side: Side, node: u32, count: u32 },
    #[error("edge {index} endpoint {node} out of range on {side:?} (count {count})")]
    EdgeEndpointOutOfRange {
        index: usize,
        side: Side,
        node: u32,
        count: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Undirected bipartite multigraph with explicit parallel edges.
///
/// Incidence lists hold edge indices in ascending order, which downstream
/// Euler traversals rely on for determinism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMultigraph {
    left_count: u32,
    right_count: u32,
    edges: Vec<(u32, u32)>,
    left_off: Vec<u32>,
    left_inc: Vec<u32>,
    right_off: Vec<u32>,
    right_inc: Vec<u32>,
}

impl BipartiteMultigraph {
    pub fn new(
        left_count: u32,
        right_count: u32,
        edges: Vec<(u32, u32)>,
    ) -> Result<Self, MultigraphError> {
        for (index, &(l, r)) in edges.iter().enumerate() {
            if l >= left_count {
                return Err(MultigraphError::EdgeEndpointOutOfRange {
                    index,
                    side: Side::Left,
                    node: l,
                    count: left_count,
                });
            }
            if r >= right_count {
                return Err(MultigraphError::EdgeEndpointOutOfRange {
                    index,
                    side: Side::Right,
                    node: r,
                    count: right_count,
                });
            }
        }
        let (left_off, left_inc) = incidence(left_count as usize, edges.iter().map(|&(l, _)| l));
        let (right_off, right_inc) = incidence(right_count as usize, edges.iter().map(|&(_, r)| r));
        Ok(BipartiteMultigraph {
            left_count,
            right_count,
            edges,
            left_off,
            left_inc,
            right_off,
            right_inc,
        })
    }

    pub fn left_count(&self) -> u32 {
        self.left_count
    }

    pub fn right_count(&self) -> u32 {
        self.right_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `e` as (left node, right node).
    pub fn endpoints(&self, e: usize) -> Option<(u32, u32)> {
        self.edges.get(e).copied()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Edge indices incident to a node, ascending.
    pub fn incidence(&self, side: Side, node: u32) -> Result<&[u32], MultigraphError> {
        let (count, off, inc) = match side {
            Side::Left => (self.left_count, &self.left_off, &self.left_inc),
            Side::Right => (self.right_count, &self.right_off, &self.right_inc),
        };
        if node >= count {
            return Err(MultigraphError::NodeOutOfRange { side, node, count });
        }
        let lo = off[node as usize] as usize;
        let hi = off[node as usize + 1] as usize;
        Ok(&inc[lo..hi])
    }

    pub fn degree(&self, side: Side, node: u32) -> Result<u32, MultigraphError> {
        Ok(self.incidence(side, node)?.len() as u32)
    }
}

fn incidence(count: usize, endpoints: impl Iterator<Item = u32> + Clone) -> (Vec<u32>, Vec<u32>) {
    let mut off = vec![0u32; count + 1];
    for node in endpoints.clone() {
        off[node as usize + 1] += 1;
    }
    for i in 0..count {
        off[i + 1] += off[i];
    }
    let mut inc = vec![0u32; off[count] as usize];
    let mut cursor: Vec<u32> = off[..count].to_vec();
    for (e, node) in endpoints.enumerate() {
        inc[cursor[node as usize] as usize] = e as u32;
        cursor[node as usize] += 1;
    }
    (off, inc)
}

/// One edge of the auxiliary graph: the two group indices containing the
/// labelling vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuxEdge {
    pub left: u32,
    pub right: u32,
    pub label: VertexId,
}

/// The auxiliary bipartite multigraph of two decompositions on one vertex
/// set. Edge index equals vertex label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxBipartiteMultigraph {
    graph: BipartiteMultigraph,
}

impl AuxBipartiteMultigraph {
    pub fn graph(&self) -> &BipartiteMultigraph {
        &self.graph
    }

    /// Vertex label of edge `e` (the identity, by construction).
    pub fn label(&self, e: usize) -> VertexId {
        e as VertexId
    }

    /// The edge contributed by vertex `v`.
    pub fn edge(&self, v: VertexId) -> Option<AuxEdge> {
        let (left, right) = self.graph.endpoints(v as usize)?;
        Some(AuxEdge {
            left,
            right,
            label: v,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn node_degree(&self, side: Side, node: u32) -> Result<u32, MultigraphError> {
        self.graph.degree(side, node)
    }
}

/// Builds the auxiliary graph: left nodes are the groups of `d1`, right
/// nodes the groups of `d2`, and vertex `v` becomes edge `v` joining the
/// two groups containing it.
pub fn build_aux(
    d1: &RootedDecomposition,
    d2: &RootedDecomposition,
) -> Result<AuxBipartiteMultigraph, MultigraphError> {
    if d1.vertex_count() != d2.vertex_count() {
        return Err(MultigraphError::VertexCountMismatch {
            left: d1.vertex_count(),
            right: d2.vertex_count(),
        });
    }
    let n = d1.vertex_count();
    let edges: Vec<(u32, u32)> = (0..n)
        .map(|v| {
            let l = d1.group_of(v).expect("vertex in range") as u32;
            let r = d2.group_of(v).expect("vertex in range") as u32;
            (l, r)
        })
        .collect();
    let graph = BipartiteMultigraph::new(d1.group_count() as u32, d2.group_count() as u32, edges)?;
    Ok(AuxBipartiteMultigraph { graph })
}

/// DOT rendering of the auxiliary graph for debugging; node names list the
/// group members, edge labels the contributing vertex.
pub fn aux_to_dot(
    h: &AuxBipartiteMultigraph,
    d1: &RootedDecomposition,
    d2: &RootedDecomposition,
) -> String {
    use std::fmt::Write;

    fn group_name(d: &RootedDecomposition, index: usize) -> String {
        let members: Vec<String> = d
            .group(index)
            .unwrap_or(&[])
            .iter()
            .map(|v| v.to_string())
            .collect();
        format!("{{{}}}", members.join(","))
    }

    let mut out = String::new();
    out.push_str("graph aux {\n  rankdir=LR;\n");
    for i in 0..h.graph.left_count() {
        let _ = writeln!(out, "  l{} [label=\"{}\"];", i, group_name(d1, i as usize));
    }
    for j in 0..h.graph.right_count() {
        let _ = writeln!(out, "  r{} [label=\"{}\"];", j, group_name(d2, j as usize));
    }
    for (e, &(l, r)) in h.graph.edges().iter().enumerate() {
        let _ = writeln!(out, "  l{} -- r{} [label=\"{}\"];", l, r, e);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose;
    use crate::gen::paper_example;
    use crate::graph::Forest;

    fn paper_aux() -> (
        AuxBipartiteMultigraph,
        RootedDecomposition,
        RootedDecomposition,
    ) {
        let pair = paper_example();
        let d1 = decompose(pair.g1(), &[0]).unwrap();
        let d2 = decompose(pair.g2(), &[0]).unwrap();
        let h = build_aux(&d1, &d2).unwrap();
        (h, d1, d2)
    }

    #[test]
    fn paper_pair_aux_degrees() {
        let (h, d1, d2) = paper_aux();
        assert_eq!(h.edge_count(), 5);
        assert_eq!(h.graph().left_count(), 5);
        assert_eq!(h.graph().right_count(), 4);
        // the sibling group {1,4} is the only node of degree 2
        let busy = d2.group_of(1).unwrap() as u32;
        assert_eq!(d2.group_of(4).unwrap() as u32, busy);
        assert_eq!(h.node_degree(Side::Right, busy).unwrap(), 2);
        for i in 0..h.graph().left_count() {
            assert_eq!(h.node_degree(Side::Left, i).unwrap(), 1);
        }
        for j in 0..h.graph().right_count() {
            let expected = if j == busy { 2 } else { 1 };
            assert_eq!(h.node_degree(Side::Right, j).unwrap(), expected);
        }
        // degree of a node equals its group's cardinality
        for (i, g) in d1.groups().enumerate() {
            assert_eq!(
                h.node_degree(Side::Left, i as u32).unwrap() as usize,
                g.len()
            );
        }
    }

    #[test]
    fn identical_single_edge_pair() {
        let f = Forest::build(2, &[(0, 1)]).unwrap();
        let d1 = decompose(&f, &[0]).unwrap();
        let d2 = decompose(&f, &[0]).unwrap();
        let h = build_aux(&d1, &d2).unwrap();
        assert_eq!(h.edge_count(), 2);
        for side in [Side::Left, Side::Right] {
            for node in 0..2 {
                assert_eq!(h.node_degree(side, node).unwrap(), 1);
            }
        }
    }

    #[test]
    fn single_vertex_pair() {
        let f = Forest::build(1, &[]).unwrap();
        let d1 = decompose(&f, &[0]).unwrap();
        let d2 = decompose(&f, &[0]).unwrap();
        let h = build_aux(&d1, &d2).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.node_degree(Side::Left, 0).unwrap(), 1);
        assert_eq!(h.node_degree(Side::Right, 0).unwrap(), 1);
    }

    #[test]
    fn rejects_vertex_count_mismatch() {
        let a = Forest::build(2, &[]).unwrap();
        let b = Forest::build(3, &[]).unwrap();
        let da = decompose(&a, &[0, 1]).unwrap();
        let db = decompose(&b, &[0, 1, 2]).unwrap();
        assert!(matches!(
            build_aux(&da, &db),
            Err(MultigraphError::VertexCountMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn labels_are_a_bijection_and_edges_join_owning_groups() {
        let (h, d1, d2) = paper_aux();
        for v in 0..5u32 {
            let e = h.edge(v).unwrap();
            assert_eq!(e.label, v);
            assert!(d1.group(e.left as usize).unwrap().contains(&v));
            assert!(d2.group(e.right as usize).unwrap().contains(&v));
        }
        let left_sum: u32 = (0..h.graph().left_count())
            .map(|i| h.node_degree(Side::Left, i).unwrap())
            .sum();
        let right_sum: u32 = (0..h.graph().right_count())
            .map(|j| h.node_degree(Side::Right, j).unwrap())
            .sum();
        assert_eq!(left_sum, 5);
        assert_eq!(right_sum, 5);
    }

    #[test]
    fn node_degree_checks_range() {
        let (h, _, _) = paper_aux();
        assert!(matches!(
            h.node_degree(Side::Left, 100),
            Err(MultigraphError::NodeOutOfRange { .. })
        ));
    }

    #[test]
    fn dot_output_is_stable_and_labeled() {
        let (h, d1, d2) = paper_aux();
        let a = aux_to_dot(&h, &d1, &d2);
        let b = aux_to_dot(&h, &d1, &d2);
        assert_eq!(a, b);
        assert!(a.contains("label=\"{1,4}\""));
        assert!(a.contains("l0 -- r0 [label=\"0\"]"));
    }

    #[test]
    fn rejects_out_of_range_endpoints() {
        let err = BipartiteMultigraph::new(1, 1, vec![(0, 1)]).unwrap_err();
        assert!(matches!(
            err,
            MultigraphError::EdgeEndpointOutOfRange {
                side: Side::Right,
                ..
            }
        ));
    }
}
