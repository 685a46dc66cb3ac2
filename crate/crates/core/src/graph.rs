//! Dynamic simple graph, degree index, contraction maps and quotient
//! multigraphs.
//!
//! [`DynGraph`] is the single source of truth for the dynamic graph: both
//! engines mirror their state off its update stream. The vertex set is
//! fixed at construction; only edges change.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::rng::fold_hash;

/// Receipt for one edge update; carries the degree transitions of the two
/// endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UpdateReceipt {
    pub u: usize,
    pub v: usize,
    pub old_deg_u: usize,
    pub new_deg_u: usize,
    pub old_deg_v: usize,
    pub new_deg_v: usize,
}

/// Degree-keyed buckets with a lazily advanced minimum pointer.
#[derive(Debug, Clone)]
struct DegreeIndex {
    /// bucket_counts[d] = number of vertices with degree d
    bucket_counts: Vec<usize>,
    min_ptr: usize,
}

impl DegreeIndex {
    fn new(n: usize) -> Self {
        let mut bucket_counts = vec![0; n.max(1)];
        bucket_counts[0] = n;
        DegreeIndex { bucket_counts, min_ptr: 0 }
    }

    fn move_vertex(&mut self, old_deg: usize, new_deg: usize) {
        self.bucket_counts[old_deg] -= 1;
        self.bucket_counts[new_deg] += 1;
        if new_deg < self.min_ptr {
            self.min_ptr = new_deg;
        }
        while self.min_ptr < self.bucket_counts.len() - 1 && self.bucket_counts[self.min_ptr] == 0 {
            self.min_ptr += 1;
        }
    }

    fn min_degree(&self) -> usize {
        self.min_ptr
    }
}

/// Mutable simple undirected graph with degree tracking.
#[derive(Debug, Clone)]
pub struct DynGraph {
    n: usize,
    adjacency: Vec<BTreeSet<usize>>,
    m: usize,
    degrees: DegreeIndex,
}

impl DynGraph {
    /// Empty graph on vertices `0..n`.
    pub fn new(n: usize) -> Self {
        DynGraph {
            n,
            adjacency: vec![BTreeSet::new(); n],
            m: 0,
            degrees: DegreeIndex::new(n),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = DynGraph::new(n);
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adjacency[u].contains(&v)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[u].iter().copied()
    }

    /// All edges as canonical `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::UnknownVertex(u, self.n));
        }
        Ok(())
    }

    pub fn insert_edge(&mut self, u: usize, v: usize) -> Result<UpdateReceipt> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.adjacency[u].contains(&v) {
            return Err(Error::DuplicateEdge(u, v));
        }
        let (odu, odv) = (self.degree(u), self.degree(v));
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        self.m += 1;
        self.degrees.move_vertex(odu, odu + 1);
        self.degrees.move_vertex(odv, odv + 1);
        Ok(UpdateReceipt {
            u,
            v,
            old_deg_u: odu,
            new_deg_u: odu + 1,
            old_deg_v: odv,
            new_deg_v: odv + 1,
        })
    }

    pub fn delete_edge(&mut self, u: usize, v: usize) -> Result<UpdateReceipt> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v || !self.adjacency[u].contains(&v) {
            return Err(Error::MissingEdge(u, v));
        }
        let (odu, odv) = (self.degree(u), self.degree(v));
        self.adjacency[u].remove(&v);
        self.adjacency[v].remove(&u);
        self.m -= 1;
        self.degrees.move_vertex(odu, odu - 1);
        self.degrees.move_vertex(odv, odv - 1);
        Ok(UpdateReceipt {
            u,
            v,
            old_deg_u: odu,
            new_deg_u: odu - 1,
            old_deg_v: odv,
            new_deg_v: odv - 1,
        })
    }

    /// Minimum degree, from the bucket index.
    pub fn min_degree(&self) -> usize {
        if self.n == 0 {
            0
        } else {
            self.degrees.min_degree()
        }
    }

    /// A vertex attaining the minimum degree.
    pub fn min_degree_vertex(&self) -> Option<usize> {
        let d = self.min_degree();
        (0..self.n).find(|&u| self.degree(u) == d)
    }

    /// Order-independent digest of the edge set.
    pub fn state_hash(&self) -> u64 {
        fold_hash(self.edges().map(|(u, v)| (u as u64) << 32 | v as u64))
    }

    /// Project `self` onto the clusters of `map`, dropping intra-cluster
    /// edges; every surviving edge contributes multiplicity 1.
    pub fn quotient(&self, map: &ContractionMap) -> Result<MultiGraph> {
        if !map.is_partition_of(self.n) {
            return Err(Error::InvalidPartition);
        }
        let mut mg = MultiGraph::new(map.cluster_ids().collect());
        for (u, v) in self.edges() {
            let (cu, cv) = (map.cluster_of(u), map.cluster_of(v));
            if cu != cv {
                mg.add_edge(cu, cv, 1);
            }
        }
        Ok(mg)
    }

    /// Number of edges crossing the bipartition (`side`, rest).
    pub fn cut_size(&self, side: &BTreeSet<usize>) -> usize {
        side.iter()
            .map(|&u| self.adjacency[u].iter().filter(|v| !side.contains(v)).count())
            .sum()
    }

    /// Connected components, by BFS.
    pub fn components(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}

/// Splittable partition of `0..n` into clusters.
///
/// Member sets are stored explicitly (not union-find) so contractions can be
/// reversed one vertex at a time.
#[derive(Debug, Clone)]
pub struct ContractionMap {
    cluster_of: Vec<usize>,
    members: BTreeMap<usize, BTreeSet<usize>>,
    next_id: usize,
}

impl ContractionMap {
    /// Every vertex its own cluster; cluster ids coincide with vertex ids.
    pub fn identity(n: usize) -> Self {
        ContractionMap {
            cluster_of: (0..n).collect(),
            members: (0..n).map(|u| (u, BTreeSet::from([u]))).collect(),
            next_id: n,
        }
    }

    /// Build from disjoint vertex groups covering `0..n`.
    pub fn from_groups(n: usize, groups: &[BTreeSet<usize>]) -> Result<Self> {
        let mut map = ContractionMap {
            cluster_of: vec![usize::MAX; n],
            members: BTreeMap::new(),
            next_id: 0,
        };
        for group in groups {
            let id = map.next_id;
            map.next_id += 1;
            for &u in group {
                if u >= n || map.cluster_of[u] != usize::MAX {
                    return Err(Error::InvalidPartition);
                }
                map.cluster_of[u] = id;
            }
            map.members.insert(id, group.clone());
        }
        if map.cluster_of.iter().any(|&c| c == usize::MAX) {
            return Err(Error::InvalidPartition);
        }
        Ok(map)
    }

    pub fn n(&self) -> usize {
        self.cluster_of.len()
    }

    pub fn cluster_of(&self, u: usize) -> usize {
        self.cluster_of[u]
    }

    pub fn cluster_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.keys().copied()
    }

    pub fn num_clusters(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self, cluster: usize) -> Option<&BTreeSet<usize>> {
        self.members.get(&cluster)
    }

    /// Split `v` out of its cluster into a fresh singleton. Returns the new
    /// cluster id (unchanged if `v` was already a singleton).
    pub fn uncontract(&mut self, v: usize) -> usize {
        let old = self.cluster_of[v];
        if self.members[&old].len() == 1 {
            return old;
        }
        self.members.get_mut(&old).unwrap().remove(&v);
        let id = self.next_id;
        self.next_id += 1;
        self.members.insert(id, BTreeSet::from([v]));
        self.cluster_of[v] = id;
        id
    }

    pub fn is_partition_of(&self, n: usize) -> bool {
        if self.cluster_of.len() != n {
            return false;
        }
        let total: usize = self.members.values().map(|s| s.len()).sum();
        total == n && (0..n).all(|u| self.members.get(&self.cluster_of[u]).is_some_and(|s| s.contains(&u)))
    }
}

/// Multigraph with edge multiplicities; quotients of [`DynGraph`] and the
/// substrate for the static min-cut oracles.
#[derive(Debug, Clone)]
pub struct MultiGraph {
    vertices: Vec<usize>,
    /// canonical (a, b) with a < b -> multiplicity
    weights: BTreeMap<(usize, usize), usize>,
}

impl MultiGraph {
    pub fn new(vertices: Vec<usize>) -> Self {
        MultiGraph { vertices, weights: BTreeMap::new() }
    }

    pub fn from_graph(g: &DynGraph) -> Self {
        let mut mg = MultiGraph::new((0..g.n()).collect());
        for (u, v) in g.edges() {
            mg.add_edge(u, v, 1);
        }
        mg
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn add_vertex(&mut self, v: usize) {
        if !self.vertices.contains(&v) {
            self.vertices.push(v);
        }
    }

    /// Self-loops are dropped.
    pub fn add_edge(&mut self, a: usize, b: usize, mult: usize) {
        if a == b || mult == 0 {
            return;
        }
        let key = (a.min(b), a.max(b));
        *self.weights.entry(key).or_insert(0) += mult;
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        self.weights.get(&(a.min(b), a.max(b))).copied().unwrap_or(0)
    }

    /// Distinct vertex pairs with positive multiplicity.
    pub fn edge_pairs(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.weights.iter().map(|(&k, &w)| (k, w))
    }

    /// Total edge multiplicity.
    pub fn total_multiplicity(&self) -> usize {
        self.weights.values().sum()
    }

    /// Multiplicity-weighted boundary of a vertex subset.
    pub fn cut_size(&self, side: &BTreeSet<usize>) -> usize {
        self.weights
            .iter()
            .filter(|(&(a, b), _)| side.contains(&a) != side.contains(&b))
            .map(|(_, &w)| w)
            .sum()
    }

    pub fn weighted_degree(&self, v: usize) -> usize {
        self.weights
            .iter()
            .filter(|(&(a, b), _)| a == v || b == v)
            .map(|(_, &w)| w)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> DynGraph {
        DynGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn insert_into_empty_graph() {
        let mut g = DynGraph::new(3);
        g.insert_edge(0, 1).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.min_degree(), 0); // vertex 2 isolated
    }

    #[test]
    fn insert_closing_triangle_raises_min_degree() {
        let mut g = DynGraph::from_edges(3, &[(1, 2), (0, 2)]).unwrap();
        assert_eq!(g.min_degree(), 1);
        g.insert_edge(0, 1).unwrap();
        assert_eq!(g.min_degree(), 2);
    }

    #[test]
    fn duplicate_and_selfloop_rejected() {
        let mut g = DynGraph::new(3);
        g.insert_edge(0, 1).unwrap();
        assert_eq!(g.insert_edge(1, 0), Err(Error::DuplicateEdge(1, 0)));
        assert_eq!(g.insert_edge(1, 1), Err(Error::SelfLoop(1)));
        assert_eq!(g.insert_edge(0, 9), Err(Error::UnknownVertex(9, 3)));
    }

    #[test]
    fn delete_updates_min_degree() {
        let mut g = triangle();
        g.delete_edge(0, 1).unwrap();
        assert_eq!(g.min_degree(), 1);
        let mut path = DynGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        path.delete_edge(0, 1).unwrap();
        assert_eq!(path.min_degree(), 0);
        assert_eq!(path.components().len(), 2);
        assert_eq!(path.delete_edge(0, 1), Err(Error::MissingEdge(0, 1)));
    }

    #[test]
    fn min_degree_examples() {
        let k4 = DynGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.min_degree(), 3);
        let star = DynGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.min_degree(), 1);
        let mut c5 = DynGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        c5.delete_edge(2, 3).unwrap();
        assert_eq!(c5.min_degree(), 1);
    }

    #[test]
    fn min_degree_matches_rescan_under_updates() {
        use rand::Rng;
        let mut rng = crate::rng::stream(11, "graph-test", 0);
        let mut g = DynGraph::new(10);
        for _ in 0..500 {
            let u = rng.gen_range(0..10);
            let v = rng.gen_range(0..10);
            if u == v {
                continue;
            }
            if g.has_edge(u, v) {
                g.delete_edge(u, v).unwrap();
            } else {
                g.insert_edge(u, v).unwrap();
            }
            let rescan = (0..10).map(|u| g.degree(u)).min().unwrap();
            assert_eq!(g.min_degree(), rescan);
        }
    }

    #[test]
    fn insert_delete_restores_state_hash() {
        let mut g = triangle();
        let h = g.state_hash();
        g.insert_edge(1, 2).unwrap_err();
        g.delete_edge(0, 2).unwrap();
        g.insert_edge(0, 2).unwrap();
        assert_eq!(g.state_hash(), h);
    }

    #[test]
    fn quotient_c4_pairs() {
        let c4 = DynGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let map = ContractionMap::from_groups(4, &[BTreeSet::from([0, 1]), BTreeSet::from([2, 3])]).unwrap();
        let q = c4.quotient(&map).unwrap();
        assert_eq!(q.num_vertices(), 2);
        assert_eq!(q.total_multiplicity(), 2);
    }

    #[test]
    fn quotient_identity_and_collapse() {
        let g = triangle();
        let q = g.quotient(&ContractionMap::identity(3)).unwrap();
        assert_eq!(q.total_multiplicity(), 3);
        assert!(q.edge_pairs().all(|(_, w)| w == 1));
        let all = ContractionMap::from_groups(3, &[BTreeSet::from([0, 1, 2])]).unwrap();
        let q1 = g.quotient(&all).unwrap();
        assert_eq!(q1.num_vertices(), 1);
        assert_eq!(q1.total_multiplicity(), 0);
    }

    #[test]
    fn quotient_preserves_cut_values_small() {
        use rand::Rng;
        let mut rng = crate::rng::stream(5, "graph-test", 1);
        for _ in 0..20 {
            let n = 8;
            let mut g = DynGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.insert_edge(u, v).unwrap();
                    }
                }
            }
            // random partition into 3 groups
            let mut groups = vec![BTreeSet::new(), BTreeSet::new(), BTreeSet::new()];
            for u in 0..n {
                groups[rng.gen_range(0..3)].insert(u);
            }
            let groups: Vec<_> = groups.into_iter().filter(|s| !s.is_empty()).collect();
            let map = ContractionMap::from_groups(n, &groups).unwrap();
            let q = g.quotient(&map).unwrap();
            // boundary of any cluster subset matches the G-side boundary
            let ids: Vec<usize> = map.cluster_ids().collect();
            for mask in 1..(1u32 << ids.len()) - 1 {
                let side_clusters: BTreeSet<usize> =
                    ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &c)| c).collect();
                let side_vertices: BTreeSet<usize> =
                    (0..n).filter(|&u| side_clusters.contains(&map.cluster_of(u))).collect();
                assert_eq!(q.cut_size(&side_clusters), g.cut_size(&side_vertices));
            }
        }
    }

    #[test]
    fn uncontract_makes_singleton() {
        let mut map = ContractionMap::from_groups(4, &[BTreeSet::from([0, 1, 2]), BTreeSet::from([3])]).unwrap();
        let id = map.uncontract(1);
        assert!(map.is_partition_of(4));
        assert_eq!(map.members(id).unwrap().len(), 1);
        assert_eq!(map.cluster_of(1), id);
        assert_eq!(map.num_clusters(), 3);
    }
}
