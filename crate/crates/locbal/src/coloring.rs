//! Balanced 2-coloring of bipartite multigraph edges.
//!
//! Every node should see the two colors in near-equal numbers among its
//! incident edges. The construction: pad odd-degree nodes with dummy edges
//! so every degree is even, walk an Euler circuit through each component,
//! and alternate colors along the walk. In a bipartite graph every circuit
//! has even length, so the alternation closes up and each node ends with
//! exactly half of each color; dropping a node's single dummy edge (only
//! odd-degree nodes have one) moves its imbalance to exactly `degree mod 2`,
//! which in particular never exceeds 1.

use thiserror::Error;

use crate::multigraph::BipartiteMultigraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("node {node} has odd degree {degree}; Euler circuits need all degrees even")]
    OddDegree { node: u32, degree: u32 },
    #[error("circuit of odd length {len}; the input graph cannot be bipartite")]
    OddCircuitLength { len: usize },
}

/// One color bit per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    bits: Vec<u8>,
}

impl EdgeColoring {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn color(&self, e: usize) -> Option<u8> {
        self.bits.get(e).copied()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }
}

/// A bipartite multigraph padded until every node has even degree.
///
/// Nodes live in one flat id space: left nodes first, then a dummy left
/// node when needed, then right nodes, then a dummy right node. Original
/// edges keep their indices; dummy edges are appended after them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedMultigraph {
    node_count: u32,
    original_edge_count: usize,
    edges: Vec<(u32, u32)>,
    inc_off: Vec<u32>,
    inc: Vec<u32>,
    dummy_left: Option<u32>,
    dummy_right: Option<u32>,
    dummy_pair_edge: bool,
}

impl AugmentedMultigraph {
    pub fn node_count(&self) -> u32 {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn original_edge_count(&self) -> usize {
        self.original_edge_count
    }

    pub fn dummy_edge_count(&self) -> usize {
        self.edges.len() - self.original_edge_count
    }

    pub fn is_dummy(&self, e: usize) -> bool {
        e >= self.original_edge_count
    }

    /// Flat node id of the dummy on the left side, if one was added.
    pub fn dummy_left(&self) -> Option<u32> {
        self.dummy_left
    }

    pub fn dummy_right(&self) -> Option<u32> {
        self.dummy_right
    }

    /// Whether the two dummies had to be joined to even themselves out.
    pub fn has_dummy_pair_edge(&self) -> bool {
        self.dummy_pair_edge
    }

    pub fn endpoints(&self, e: usize) -> Option<(u32, u32)> {
        self.edges.get(e).copied()
    }

    pub fn degree(&self, node: u32) -> u32 {
        let lo = self.inc_off[node as usize];
        let hi = self.inc_off[node as usize + 1];
        hi - lo
    }

    fn incidence(&self, node: u32) -> &[u32] {
        let lo = self.inc_off[node as usize] as usize;
        let hi = self.inc_off[node as usize + 1] as usize;
        &self.inc[lo..hi]
    }

    #[cfg(test)]
    pub(crate) fn from_edges(node_count: u32, edges: Vec<(u32, u32)>) -> Self {
        let (inc_off, inc) = build_incidence(node_count, &edges);
        AugmentedMultigraph {
            node_count,
            original_edge_count: edges.len(),
            edges,
            inc_off,
            inc,
            dummy_left: None,
            dummy_right: None,
            dummy_pair_edge: false,
        }
    }
}

fn build_incidence(node_count: u32, edges: &[(u32, u32)]) -> (Vec<u32>, Vec<u32>) {
    let mut off = vec![0u32; node_count as usize + 1];
    for &(a, b) in edges {
        off[a as usize + 1] += 1;
        off[b as usize + 1] += 1;
    }
    for i in 0..node_count as usize {
        off[i + 1] += off[i];
    }
    let mut inc = vec![0u32; off[node_count as usize] as usize];
    let mut cursor: Vec<u32> = off[..node_count as usize].to_vec();
    for (e, &(a, b)) in edges.iter().enumerate() {
        inc[cursor[a as usize] as usize] = e as u32;
        cursor[a as usize] += 1;
        inc[cursor[b as usize] as usize] = e as u32;
        cursor[b as usize] += 1;
    }
    (off, inc)
}

/// Pads `h` with dummy nodes and edges until every degree is even.
///
/// A dummy right node is joined once to each odd-degree left node and a
/// dummy left node once to each odd-degree right node. The two dummy
/// degrees have equal parity (the number of odd-degree nodes is even), so
/// when they are odd a single dummy-dummy edge finishes the job. Dummies
/// that would have degree zero are not added at all.
pub fn augment_even(h: &BipartiteMultigraph) -> AugmentedMultigraph {
    use crate::multigraph::Side;

    let left = h.left_count();
    let right = h.right_count();
    let odd_left: Vec<u32> = (0..left)
        .filter(|&i| h.degree(Side::Left, i).unwrap() % 2 == 1)
        .collect();
    let odd_right: Vec<u32> = (0..right)
        .filter(|&j| h.degree(Side::Right, j).unwrap() % 2 == 1)
        .collect();

    let need_alpha = !odd_right.is_empty();
    let need_beta = !odd_left.is_empty();
    // flat ids: lefts, then alpha, then rights, then beta
    let alpha = need_alpha.then_some(left);
    let right_base = left + u32::from(need_alpha);
    let beta = need_beta.then_some(right_base + right);
    let node_count = right_base + right + u32::from(need_beta);

    let mut edges: Vec<(u32, u32)> = h
        .edges()
        .iter()
        .map(|&(l, r)| (l, right_base + r))
        .collect();
    let original_edge_count = edges.len();
    for &l in &odd_left {
        edges.push((l, beta.expect("odd left nodes imply beta")));
    }
    for &r in &odd_right {
        edges.push((alpha.expect("odd right nodes imply alpha"), right_base + r));
    }
    let dummy_pair_edge = odd_left.len() % 2 == 1;
    debug_assert_eq!(odd_left.len() % 2, odd_right.len() % 2);
    if dummy_pair_edge {
        edges.push((
            alpha.expect("odd dummy degree implies both dummies"),
            beta.expect("odd dummy degree implies both dummies"),
        ));
    }

    let (inc_off, inc) = build_incidence(node_count, &edges);
    AugmentedMultigraph {
        node_count,
        original_edge_count,
        edges,
        inc_off,
        inc,
        dummy_left: alpha,
        dummy_right: beta,
        dummy_pair_edge,
    }
}

/// Decomposes an all-even-degree multigraph into one closed circuit per
/// component with edges, each edge used exactly once.
///
/// Hierholzer's algorithm with fixed tie-breaking: components are visited
/// in ascending order of their smallest node, each circuit starts at that
/// node, and unused incident edges are taken in ascending edge-index order.
pub fn euler_circuits(g: &AugmentedMultigraph) -> Result<Vec<Vec<u32>>, ColoringError> {
    for node in 0..g.node_count {
        let degree = g.degree(node);
        if degree % 2 == 1 {
            return Err(ColoringError::OddDegree { node, degree });
        }
    }

    let mut used = vec![false; g.edges.len()];
    let mut cursor = vec![0usize; g.node_count as usize];
    let mut in_circuit = vec![false; g.node_count as usize];
    let mut circuits = Vec::new();

    for start in 0..g.node_count {
        if in_circuit[start as usize] || g.degree(start) == 0 {
            continue;
        }
        let mut stack: Vec<(u32, Option<u32>)> = vec![(start, None)];
        let mut trail: Vec<u32> = Vec::new();
        while let Some(&(v, edge_in)) = stack.last() {
            in_circuit[v as usize] = true;
            let inc = g.incidence(v);
            let mut advanced = false;
            while cursor[v as usize] < inc.len() {
                let e = inc[cursor[v as usize]];
                cursor[v as usize] += 1;
                if used[e as usize] {
                    continue;
                }
                used[e as usize] = true;
                let (a, b) = g.edges[e as usize];
                let w = if a == v { b } else { a };
                stack.push((w, Some(e)));
                advanced = true;
                break;
            }
            if !advanced {
                stack.pop();
                if let Some(e) = edge_in {
                    trail.push(e);
                }
            }
        }
        trail.reverse();
        circuits.push(trail);
    }
    Ok(circuits)
}

/// Colors edges 1,0,1,0,... along each circuit. Fails on an odd circuit,
/// which can only arise from a non-bipartite input.
pub fn alternate_colors(
    circuits: &[Vec<u32>],
    edge_count: usize,
) -> Result<EdgeColoring, ColoringError> {
    let mut bits = vec![2u8; edge_count];
    for circuit in circuits {
        if circuit.len() % 2 == 1 {
            return Err(ColoringError::OddCircuitLength { len: circuit.len() });
        }
        for (pos, &e) in circuit.iter().enumerate() {
            assert_eq!(bits[e as usize], 2, "edge {e} appears in two circuits");
            bits[e as usize] = u8::from(pos % 2 == 0);
        }
    }
    assert!(
        bits.iter().all(|&b| b <= 1),
        "circuits do not cover every edge"
    );
    Ok(EdgeColoring { bits })
}

/// Balanced 2-coloring of a bipartite multigraph: every node's imbalance
/// between the two colors equals its degree parity, hence is at most 1.
///
/// Deterministic: identical input yields an identical coloring.
pub fn balanced_two_coloring(h: &BipartiteMultigraph) -> EdgeColoring {
    let augmented = augment_even(h);
    let circuits = euler_circuits(&augmented).expect("augmented degrees are even");
    let full = alternate_colors(&circuits, augmented.edge_count())
        .expect("bipartite circuits have even length");
    EdgeColoring {
        bits: full.bits[..augmented.original_edge_count()].to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::decompose;
    use crate::gen::paper_example;
    use crate::multigraph::{build_aux, BipartiteMultigraph, Side};

    fn paper_h() -> BipartiteMultigraph {
        let pair = paper_example();
        let d1 = decompose(pair.g1(), &[0]).unwrap();
        let d2 = decompose(pair.g2(), &[0]).unwrap();
        build_aux(&d1, &d2).unwrap().graph().clone()
    }

    fn node_balance(
        h: &BipartiteMultigraph,
        coloring: &EdgeColoring,
        side: Side,
        node: u32,
    ) -> u32 {
        let inc = h.incidence(side, node).unwrap();
        let ones: i64 = inc
            .iter()
            .map(|&e| i64::from(coloring.color(e as usize).unwrap()))
            .sum();
        (2 * ones - inc.len() as i64).unsigned_abs() as u32
    }

    #[test]
    fn augment_identity_when_degrees_even() {
        // two parallel edges: both endpoints have degree 2 already
        let h = BipartiteMultigraph::new(1, 1, vec![(0, 0), (0, 0)]).unwrap();
        let g = augment_even(&h);
        assert_eq!(g.dummy_edge_count(), 0);
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.dummy_left(), None);
        assert_eq!(g.dummy_right(), None);
    }

    #[test]
    fn augment_paper_pair() {
        // 5 odd left nodes and 3 odd right nodes: 8 pairing edges, and both
        // dummies come out odd, so one more edge joins them.
        let g = augment_even(&paper_h());
        assert_eq!(g.original_edge_count(), 5);
        assert_eq!(g.dummy_edge_count(), 9);
        assert!(g.has_dummy_pair_edge());
        let alpha = g.dummy_left().unwrap();
        let beta = g.dummy_right().unwrap();
        assert_eq!(g.degree(alpha), 4);
        assert_eq!(g.degree(beta), 6);
        for node in 0..g.node_count() {
            assert_eq!(g.degree(node) % 2, 0);
        }
    }

    #[test]
    fn augment_single_edge() {
        let h = BipartiteMultigraph::new(1, 1, vec![(0, 0)]).unwrap();
        let g = augment_even(&h);
        assert_eq!(g.dummy_edge_count(), 3);
        assert!(g.has_dummy_pair_edge());
        for node in 0..g.node_count() {
            assert_eq!(g.degree(node) % 2, 0);
        }
    }

    #[test]
    fn euler_two_cycle() {
        let g = AugmentedMultigraph::from_edges(2, vec![(0, 1), (0, 1)]);
        assert_eq!(euler_circuits(&g).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn euler_four_cycle() {
        let g = AugmentedMultigraph::from_edges(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]);
        let circuits = euler_circuits(&g).unwrap();
        assert_eq!(circuits.len(), 1);
        assert_eq!(circuits[0].len(), 4);
    }

    #[test]
    fn euler_edgeless() {
        let g = AugmentedMultigraph::from_edges(3, vec![]);
        assert!(euler_circuits(&g).unwrap().is_empty());
    }

    #[test]
    fn euler_rejects_odd_degree() {
        let g = AugmentedMultigraph::from_edges(2, vec![(0, 1)]);
        assert_eq!(
            euler_circuits(&g).unwrap_err(),
            ColoringError::OddDegree { node: 0, degree: 1 }
        );
    }

    #[test]
    fn euler_paper_pair_is_the_frozen_circuit() {
        let g = augment_even(&paper_h());
        let circuits = euler_circuits(&g).unwrap();
        assert_eq!(
            circuits,
            vec![vec![0, 10, 11, 2, 7, 6, 1, 4, 9, 8, 3, 12, 13, 5]]
        );
    }

    #[test]
    fn alternation_examples() {
        let c = alternate_colors(&[vec![0, 1]], 2).unwrap();
        assert_eq!(c.bits(), &[1, 0]);
        let c = alternate_colors(&[vec![0, 1, 2, 3]], 4).unwrap();
        assert_eq!(c.bits(), &[1, 0, 1, 0]);
        let c = alternate_colors(&[vec![0, 1], vec![2, 3]], 4).unwrap();
        assert_eq!(c.bits(), &[1, 0, 1, 0]);
    }

    #[test]
    fn alternation_rejects_odd_circuit() {
        assert_eq!(
            alternate_colors(&[vec![0, 1, 2]], 3).unwrap_err(),
            ColoringError::OddCircuitLength { len: 3 }
        );
    }

    #[test]
    fn coloring_splits_degree_two_node() {
        let h = BipartiteMultigraph::new(1, 2, vec![(0, 0), (0, 1)]).unwrap();
        let c = balanced_two_coloring(&h);
        assert_ne!(c.color(0), c.color(1));
    }

    #[test]
    fn coloring_paper_pair_golden() {
        let h = paper_h();
        let c = balanced_two_coloring(&h);
        assert_eq!(c.bits(), &[1, 1, 0, 1, 0]);
        // the degree-2 group {1,4} sees one edge of each color
        assert_ne!(c.color(1), c.color(4));
        for i in 0..h.left_count() {
            let parity = h.degree(Side::Left, i).unwrap() % 2;
            assert_eq!(node_balance(&h, &c, Side::Left, i), parity);
        }
        for j in 0..h.right_count() {
            let parity = h.degree(Side::Right, j).unwrap() % 2;
            assert_eq!(node_balance(&h, &c, Side::Right, j), parity);
        }
    }

    #[test]
    fn coloring_empty_graph() {
        let h = BipartiteMultigraph::new(0, 0, vec![]).unwrap();
        assert!(balanced_two_coloring(&h).is_empty());
    }

    #[test]
    fn coloring_never_leaks_dummy_edges_and_is_deterministic() {
        let h = paper_h();
        let a = balanced_two_coloring(&h);
        let b = balanced_two_coloring(&h);
        assert_eq!(a, b);
        assert_eq!(a.len(), h.edge_count());
    }
}
