//! Rooted level decomposition of a forest into sibling groups.
//!
//! Each tree of the forest is rooted, vertices get BFS levels, and the
//! vertex set is partitioned into *groups*: one singleton per root plus,
//! for every vertex with children, the set of those children. The family
//! of groups is the pivot of the whole construction: every vertex's
//! neighborhood is its children group plus at most its parent, so a
//! partition balanced on groups is nearly balanced on neighborhoods.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Forest, VertexId};

const NO_VERTEX: u32 = u32::MAX;
const NO_GROUP: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("expected {expected} roots (one per component), got {got}")]
    WrongRootCount { expected: u32, got: usize },
    #[error("root {vertex} out of range (vertex count {vertex_count})")]
    RootOutOfRange { vertex: VertexId, vertex_count: u32 },
    #[error("roots {first} and {second} lie in the same component")]
    SameComponent { first: VertexId, second: VertexId },
    #[error("vertex {vertex} out of range (vertex count {vertex_count})")]
    VertexOutOfRange { vertex: VertexId, vertex_count: u32 },
}

/// How roots are picked, one per component.
///
/// `MinId` is the reproducible default. `Seeded` draws each root uniformly
/// from its component (sorted ascending) using a ChaCha8 stream keyed by the
/// seed, components visited in ascending order of their smallest vertex.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum RootStrategy {
    #[default]
    MinId,
    Seeded(u64),
}

/// Picks exactly one root per connected component.
pub fn choose_roots(forest: &Forest, strategy: RootStrategy) -> Vec<VertexId> {
    let components = components_ascending(forest);
    match strategy {
        RootStrategy::MinId => components.iter().map(|c| c[0]).collect(),
        RootStrategy::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            components
                .iter()
                .map(|c| c[rng.gen_range(0..c.len())])
                .collect()
        }
    }
}

/// Connected components, each sorted ascending, ordered by smallest member.
fn components_ascending(forest: &Forest) -> Vec<Vec<VertexId>> {
    let n = forest.vertex_count() as usize;
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    let mut queue = Vec::new();
    for start in 0..n as u32 {
        if seen[start as usize] {
            continue;
        }
        seen[start as usize] = true;
        queue.clear();
        queue.push(start);
        let mut members = Vec::new();
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            members.push(v);
            for &w in forest.neighbors_unchecked(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    queue.push(w);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}

/// A forest with roots chosen, BFS levels assigned, and the vertex set
/// partitioned into root singletons and children groups.
///
/// Group enumeration order is fixed: components in root order, the root
/// singleton first, then the children group of each vertex in BFS
/// discovery order. Group indices are therefore stable across runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedDecomposition {
    vertex_count: u32,
    roots: Vec<VertexId>,
    parent: Vec<u32>,
    level: Vec<u32>,
    max_level: Vec<u32>,
    group_off: Vec<u32>,
    group_members: Vec<VertexId>,
    group_of: Vec<u32>,
    child_group: Vec<u32>,
    component_of: Vec<u32>,
}

impl RootedDecomposition {
    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    /// One root per component, in the order components were decomposed.
    pub fn roots(&self) -> &[VertexId] {
        &self.roots
    }

    pub fn component_count(&self) -> u32 {
        self.roots.len() as u32
    }

    /// BFS parent of `v`; `None` exactly for roots.
    pub fn parent(&self, v: VertexId) -> Result<Option<VertexId>, DecomposeError> {
        self.check(v)?;
        let p = self.parent[v as usize];
        Ok((p != NO_VERTEX).then_some(p))
    }

    /// Distance from `v` to the root of its component.
    pub fn level(&self, v: VertexId) -> Result<u32, DecomposeError> {
        self.check(v)?;
        Ok(self.level[v as usize])
    }

    /// Largest level in the component with the given root index; bounds the
    /// level range of that component.
    pub fn max_level(&self, component: usize) -> Option<u32> {
        self.max_level.get(component).copied()
    }

    pub fn group_count(&self) -> usize {
        self.group_off.len() - 1
    }

    /// Members of one group, sorted ascending.
    pub fn group(&self, index: usize) -> Option<&[VertexId]> {
        if index + 1 >= self.group_off.len() {
            return None;
        }
        let lo = self.group_off[index] as usize;
        let hi = self.group_off[index + 1] as usize;
        Some(&self.group_members[lo..hi])
    }

    pub fn groups(&self) -> impl Iterator<Item = &[VertexId]> {
        (0..self.group_count()).map(move |i| self.group(i).unwrap())
    }

    /// Index of the group containing `v`.
    pub fn group_of(&self, v: VertexId) -> Result<usize, DecomposeError> {
        self.check(v)?;
        Ok(self.group_of[v as usize] as usize)
    }

    /// Index of the group `{w : parent(w) = v}`, absent when `v` has no
    /// children. When present, the neighborhood of `v` minus that group is
    /// exactly the parent of `v` (empty for roots).
    pub fn children_group(&self, v: VertexId) -> Result<Option<usize>, DecomposeError> {
        self.check(v)?;
        let g = self.child_group[v as usize];
        Ok((g != NO_GROUP).then_some(g as usize))
    }

    fn check(&self, v: VertexId) -> Result<(), DecomposeError> {
        if v >= self.vertex_count {
            return Err(DecomposeError::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            });
        }
        Ok(())
    }
}

/// Roots every tree of the forest at the given roots and builds the group
/// family. Requires exactly one root per component.
pub fn decompose(
    forest: &Forest,
    roots: &[VertexId],
) -> Result<RootedDecomposition, DecomposeError> {
    let n = forest.vertex_count();
    if roots.len() != forest.component_count() as usize {
        return Err(DecomposeError::WrongRootCount {
            expected: forest.component_count(),
            got: roots.len(),
        });
    }
    for &r in roots {
        if r >= n {
            return Err(DecomposeError::RootOutOfRange {
                vertex: r,
                vertex_count: n,
            });
        }
    }

    let mut parent = vec![NO_VERTEX; n as usize];
    let mut level = vec![0u32; n as usize];
    let mut component_of = vec![u32::MAX; n as usize];
    let mut group_of = vec![NO_GROUP; n as usize];
    let mut child_group = vec![NO_GROUP; n as usize];
    let mut group_off: Vec<u32> = vec![0];
    let mut group_members: Vec<VertexId> = Vec::with_capacity(n as usize);
    let mut max_level = Vec::with_capacity(roots.len());
    let mut queue: Vec<VertexId> = Vec::new();

    for (comp, &root) in roots.iter().enumerate() {
        if component_of[root as usize] != u32::MAX {
            let first = roots[component_of[root as usize] as usize];
            return Err(DecomposeError::SameComponent {
                first,
                second: root,
            });
        }
        component_of[root as usize] = comp as u32;
        group_of[root as usize] = group_off.len() as u32 - 1;
        group_members.push(root);
        group_off.push(group_members.len() as u32);

        let mut deepest = 0;
        queue.clear();
        queue.push(root);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            deepest = deepest.max(level[u as usize]);
            let group_start = group_members.len();
            for &w in forest.neighbors_unchecked(u) {
                if component_of[w as usize] != u32::MAX {
                    continue;
                }
                component_of[w as usize] = comp as u32;
                parent[w as usize] = u;
                level[w as usize] = level[u as usize] + 1;
                group_of[w as usize] = group_off.len() as u32 - 1;
                group_members.push(w);
                queue.push(w);
            }
            if group_members.len() > group_start {
                child_group[u as usize] = group_off.len() as u32 - 1;
                group_off.push(group_members.len() as u32);
            }
        }
        max_level.push(deepest);
    }

    Ok(RootedDecomposition {
        vertex_count: n,
        roots: roots.to_vec(),
        parent,
        level,
        max_level,
        group_off,
        group_members,
        group_of,
        child_group,
        component_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Forest;

    fn path5() -> Forest {
        Forest::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap()
    }

    fn second_tree() -> Forest {
        Forest::build(5, &[(0, 4), (4, 3), (2, 1), (1, 0)]).unwrap()
    }

    fn group_vecs(d: &RootedDecomposition) -> Vec<Vec<VertexId>> {
        d.groups().map(|g| g.to_vec()).collect()
    }

    #[test]
    fn min_id_roots() {
        assert_eq!(choose_roots(&path5(), RootStrategy::MinId), vec![0]);
        let edgeless = Forest::build(3, &[]).unwrap();
        assert_eq!(choose_roots(&edgeless, RootStrategy::MinId), vec![0, 1, 2]);
        let two = Forest::build(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        assert_eq!(choose_roots(&two, RootStrategy::MinId), vec![0, 2]);
    }

    #[test]
    fn seeded_roots_are_deterministic_and_in_component() {
        let two = Forest::build(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let a = choose_roots(&two, RootStrategy::Seeded(7));
        let b = choose_roots(&two, RootStrategy::Seeded(7));
        assert_eq!(a, b);
        assert!(a[0] <= 1);
        assert!((2..=4).contains(&a[1]));
    }

    #[test]
    fn path_decomposes_into_singletons() {
        let d = decompose(&path5(), &[0]).unwrap();
        assert_eq!(
            group_vecs(&d),
            vec![vec![0], vec![1], vec![2], vec![3], vec![4]]
        );
        assert_eq!(d.max_level(0), Some(4));
    }

    #[test]
    fn branching_tree_groups_siblings() {
        let d = decompose(&second_tree(), &[0]).unwrap();
        assert_eq!(group_vecs(&d), vec![vec![0], vec![1, 4], vec![2], vec![3]]);
        assert_eq!(d.parent(3).unwrap(), Some(4));
        assert_eq!(d.level(3).unwrap(), 2);
        assert_eq!(d.max_level(0), Some(2));
    }

    #[test]
    fn isolated_vertex_is_its_own_group() {
        let f = Forest::build(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]).unwrap();
        let roots = choose_roots(&f, RootStrategy::MinId);
        assert_eq!(roots, vec![0, 7]);
        let d = decompose(&f, &roots).unwrap();
        assert!(d.groups().any(|g| g == [7]));
        assert_eq!(d.parent(7).unwrap(), None);
    }

    #[test]
    fn rejects_bad_roots() {
        let f = path5();
        assert!(matches!(
            decompose(&f, &[]),
            Err(DecomposeError::WrongRootCount {
                expected: 1,
                got: 0
            })
        ));
        assert!(matches!(
            decompose(&f, &[9]),
            Err(DecomposeError::RootOutOfRange { vertex: 9, .. })
        ));
        let two = Forest::build(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            decompose(&two, &[0, 1]),
            Err(DecomposeError::SameComponent {
                first: 0,
                second: 1
            })
        ));
    }

    #[test]
    fn children_group_of_chain_vertex() {
        let d = decompose(&path5(), &[0]).unwrap();
        let g = d.children_group(1).unwrap().unwrap();
        assert_eq!(d.group(g).unwrap(), &[2]);
        assert_eq!(d.children_group(4).unwrap(), None);
    }

    #[test]
    fn children_group_of_branching_root() {
        let d = decompose(&second_tree(), &[0]).unwrap();
        let g = d.children_group(0).unwrap().unwrap();
        assert_eq!(d.group(g).unwrap(), &[1, 4]);
        assert!(matches!(
            d.children_group(99),
            Err(DecomposeError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn groups_partition_vertices() {
        let f = Forest::build(7, &[(0, 2), (2, 4), (2, 5), (1, 3)]).unwrap();
        let d = decompose(&f, &choose_roots(&f, RootStrategy::MinId)).unwrap();
        let mut seen = [0u32; 7];
        for g in d.groups() {
            assert!(!g.is_empty());
            for &v in g {
                seen[v as usize] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
        // one group per root plus one per vertex with children
        let with_children = (0..7)
            .filter(|&v| d.children_group(v).unwrap().is_some())
            .count();
        assert_eq!(
            d.group_count(),
            d.component_count() as usize + with_children
        );
    }
}
