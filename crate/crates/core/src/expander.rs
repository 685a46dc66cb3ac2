//! Conductance, expander decomposition, and its decremental upkeep.
//!
//! All conductance comparisons are exact rational arithmetic. Clusters of
//! at most [`EXACT_CAP`] vertices are certified by enumerating every
//! bipartition; larger clusters fall back to a spectral sweep cut, whose
//! verdicts the recursion treats as advisory (a failed side is split
//! further; singletons are always valid). The decremental structure
//! follows a deletion-counter discipline: a cluster absorbing more than
//! `phi * vol / 20` internal deletions explodes into singletons, and
//! below that threshold a greedy peel plus re-certification keeps the
//! remainder a `phi/6`-expander.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::DynGraph;

/// Largest cluster size certified by exhaustive bipartition enumeration.
pub const EXACT_CAP: usize = 16;

/// An exact non-negative rational, kept unreduced.
#[derive(Debug, Clone, Copy)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        Ratio { num, den }
    }

    pub fn zero() -> Self {
        Ratio { num: 0, den: 1 }
    }

    /// self / k
    pub fn div(self, k: u64) -> Self {
        Ratio { num: self.num, den: self.den * k }
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        (self.num as u128) * other.den as u128 == (other.num as u128) * self.den as u128
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        ((self.num as u128) * other.den as u128).cmp(&((other.num as u128) * self.den as u128))
    }
}

/// Conductance of the cut (S, V minus S) in g: boundary over smaller volume.
pub fn conductance(g: &DynGraph, s: &BTreeSet<usize>) -> Result<Ratio> {
    if s.is_empty() || s.len() >= g.n() {
        return Err(Error::EmptySide);
    }
    let boundary = g.cut_size(s) as u64;
    let vol_s: usize = s.iter().map(|&v| g.degree(v)).sum();
    let vol_rest = 2 * g.m() - vol_s;
    let min_vol = vol_s.min(vol_rest) as u64;
    if min_vol == 0 {
        return Ok(Ratio::zero());
    }
    Ok(Ratio::new(boundary, min_vol))
}

/// Induced cluster view with bitmask adjacency; only for small clusters.
struct InducedBits {
    verts: Vec<usize>,
    adj: Vec<u32>,
    deg: Vec<u32>,
    total_vol: u64,
}

impl InducedBits {
    fn build(g: &DynGraph, set: &BTreeSet<usize>) -> Self {
        let verts: Vec<usize> = set.iter().copied().collect();
        let pos: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![0u32; verts.len()];
        for (i, &v) in verts.iter().enumerate() {
            for w in g.neighbors(v) {
                if let Some(&j) = pos.get(&w) {
                    adj[i] |= 1 << j;
                }
            }
        }
        let deg: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
        let total_vol = deg.iter().map(|&d| d as u64).sum();
        InducedBits { verts, adj, deg, total_vol }
    }

    fn cut_conductance(&self, mask: u32) -> Ratio {
        let full = if self.verts.len() == 32 { u32::MAX } else { (1 << self.verts.len()) - 1 };
        let mut boundary = 0u64;
        let mut vol = 0u64;
        for i in 0..self.verts.len() {
            if mask & (1 << i) != 0 {
                boundary += (self.adj[i] & (full ^ mask)).count_ones() as u64;
                vol += self.deg[i] as u64;
            }
        }
        let min_vol = vol.min(self.total_vol - vol);
        if min_vol == 0 {
            return Ratio::zero();
        }
        Ratio::new(boundary, min_vol)
    }
}

/// Exact minimum-conductance cut of G[set]; `None` for |set| < 2.
fn min_conductance_cut(g: &DynGraph, set: &BTreeSet<usize>) -> Option<(Ratio, BTreeSet<usize>)> {
    if set.len() < 2 {
        return None;
    }
    assert!(set.len() <= EXACT_CAP);
    let ind = InducedBits::build(g, set);
    let k = ind.verts.len();
    let mut best: Option<(Ratio, u32)> = None;
    // fix vertex k-1 outside S so each bipartition appears once
    for mask in 1u32..(1 << (k - 1)) {
        let phi = ind.cut_conductance(mask);
        if best.map_or(true, |(b, _)| phi < b) {
            best = Some((phi, mask));
        }
    }
    best.map(|(phi, mask)| {
        let side = ind
            .verts
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &v)| v)
            .collect();
        (phi, side)
    })
}

/// Exact check that G[u] is a phi-expander. Errors above [`EXACT_CAP`].
pub fn verify_expander(g: &DynGraph, u: &BTreeSet<usize>, phi: Ratio) -> Result<bool> {
    if u.len() > EXACT_CAP {
        return Err(Error::TooLarge(u.len(), EXACT_CAP));
    }
    match min_conductance_cut(g, u) {
        None => Ok(true),
        Some((min_phi, _)) => Ok(min_phi >= phi),
    }
}

/// Spectral sweep cut of a connected G[set]; heuristic low-conductance cut.
fn sweep_cut(g: &DynGraph, set: &BTreeSet<usize>) -> (Ratio, BTreeSet<usize>) {
    let verts: Vec<usize> = set.iter().copied().collect();
    let pos: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let k = verts.len();
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| g.neighbors(v).filter_map(|w| pos.get(&w).copied()).collect())
        .collect();
    let deg: Vec<f64> = adj.iter().map(|a| a.len() as f64).collect();
    let total_vol: f64 = deg.iter().sum();
    // power iteration on the lazy walk, deflating the stationary direction
    let mut x: Vec<f64> = (0..k).map(|i| ((i * 2654435761) % 1000) as f64 / 500.0 - 1.0).collect();
    for _ in 0..80 {
        let dot: f64 = x.iter().zip(&deg).map(|(xi, di)| xi * di).sum();
        for i in 0..k {
            x[i] -= dot / total_vol;
        }
        let mut y = vec![0.0; k];
        for i in 0..k {
            let mut s = 0.0;
            for &j in &adj[i] {
                s += x[j] / deg[j].max(1.0);
            }
            y[i] = 0.5 * x[i] + 0.5 * s;
        }
        let norm: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-12 {
            break;
        }
        for i in 0..k {
            x[i] = y[i] / norm;
        }
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        (x[a] / deg[a].max(1.0)).partial_cmp(&(x[b] / deg[b].max(1.0))).unwrap_or(Ordering::Equal)
    });
    // sweep prefixes, tracking boundary incrementally
    let mut in_side = vec![false; k];
    let mut boundary = 0i64;
    let mut vol = 0u64;
    let mut best: Option<(Ratio, usize)> = None;
    for (taken, &i) in order.iter().take(k - 1).enumerate() {
        in_side[i] = true;
        vol += adj[i].len() as u64;
        for &j in &adj[i] {
            boundary += if in_side[j] { -1 } else { 1 };
        }
        let min_vol = vol.min(total_vol as u64 - vol);
        let phi = if min_vol == 0 {
            Ratio::zero()
        } else {
            Ratio::new(boundary as u64, min_vol)
        };
        if best.map_or(true, |(b, _)| phi < b) {
            best = Some((phi, taken + 1));
        }
    }
    let (phi, prefix) = best.expect("k >= 2");
    let side: BTreeSet<usize> = order.iter().take(prefix).map(|&i| verts[i]).collect();
    (phi, side)
}

fn induced_components(g: &DynGraph, set: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut out = Vec::new();
    for &start in set {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = BTreeSet::from([start]);
        let mut queue = std::collections::VecDeque::from([start]);
        seen.insert(start);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if set.contains(&w) && seen.insert(w) {
                    comp.insert(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

fn decompose_set(g: &DynGraph, set: BTreeSet<usize>, phi: Ratio, out: &mut Vec<BTreeSet<usize>>) {
    if set.len() <= 1 {
        out.push(set);
        return;
    }
    let comps = induced_components(g, &set);
    if comps.len() > 1 {
        for c in comps {
            decompose_set(g, c, phi, out);
        }
        return;
    }
    let (min_phi, side) = if set.len() <= EXACT_CAP {
        min_conductance_cut(g, &set).expect("|set| >= 2")
    } else {
        sweep_cut(g, &set)
    };
    if min_phi >= phi {
        out.push(set);
        return;
    }
    let rest: BTreeSet<usize> = set.difference(&side).copied().collect();
    decompose_set(g, side, phi, out);
    decompose_set(g, rest, phi, out);
}

/// One cluster of a (decremental) expander decomposition.
#[derive(Debug, Clone)]
pub struct ClusterInfo {
    /// current non-pruned members
    pub members: BTreeSet<usize>,
    /// membership at decomposition time; explosion reverts to this set
    pub original: BTreeSet<usize>,
    /// volume at decomposition time (init-degree sum)
    pub vol0: usize,
    pub del_count: usize,
    pub pruned: BTreeSet<usize>,
    /// explosion threshold: floor(phi * vol0 / 20)
    pub budget: usize,
}

/// What one deletion did to the decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecOutcome {
    /// the deleted edge crossed clusters; partition untouched
    InterCluster,
    Intra(ClusterChange),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterChange {
    pub cluster: usize,
    pub pruned: Vec<usize>,
    pub exploded: bool,
}

/// A phi-expander decomposition that absorbs edge deletions.
#[derive(Debug, Clone)]
pub struct ExpanderPartition {
    pub phi: Ratio,
    g: DynGraph,
    init_deg: Vec<usize>,
    clusters: BTreeMap<usize, ClusterInfo>,
    cluster_of: Vec<usize>,
    next_id: usize,
    deletions: usize,
    deletion_budget: usize,
}

impl ExpanderPartition {
    /// Static decomposition of g into phi-expanders (Definition 4.1 shape).
    pub fn decompose(g: &DynGraph, phi: Ratio) -> Self {
        let mut sets = Vec::new();
        decompose_set(g, (0..g.n()).collect(), phi, &mut sets);
        let init_deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        let mut clusters = BTreeMap::new();
        let mut cluster_of = vec![0usize; g.n()];
        for (id, set) in sets.into_iter().enumerate() {
            for &v in &set {
                cluster_of[v] = id;
            }
            let vol0: usize = set.iter().map(|&v| init_deg[v]).sum();
            let budget = ((phi.num as u128 * vol0 as u128) / (phi.den as u128 * 20)) as usize;
            clusters.insert(
                id,
                ClusterInfo {
                    members: set.clone(),
                    original: set,
                    vol0,
                    del_count: 0,
                    pruned: BTreeSet::new(),
                    budget,
                },
            );
        }
        let next_id = clusters.len();
        let m = g.m();
        let deletion_budget =
            (((phi.num as u128).pow(2) * m as u128) / (phi.den as u128).pow(2)).max(1) as usize;
        ExpanderPartition {
            phi,
            g: g.clone(),
            init_deg,
            clusters,
            cluster_of,
            next_id,
            deletions: 0,
            deletion_budget,
        }
    }

    pub fn graph(&self) -> &DynGraph {
        &self.g
    }

    pub fn cluster_of(&self, v: usize) -> usize {
        self.cluster_of[v]
    }

    pub fn clusters(&self) -> impl Iterator<Item = (usize, &ClusterInfo)> {
        self.clusters.iter().map(|(&id, c)| (id, c))
    }

    pub fn num_inter_cluster_edges(&self) -> usize {
        self.g
            .edges()
            .filter(|&(u, v)| self.cluster_of[u] != self.cluster_of[v])
            .count()
    }

    pub fn deletions(&self) -> usize {
        self.deletions
    }

    pub fn deletion_budget(&self) -> usize {
        self.deletion_budget
    }

    /// Sum over clusters of the pruned sets' init-volume; for the
    /// accounting inequality vs (20/phi) * sum DelCount.
    pub fn pruned_volume(&self) -> usize {
        self.clusters
            .values()
            .flat_map(|c| c.pruned.iter())
            .map(|&v| self.init_deg[v])
            .sum()
    }

    pub fn total_del_count(&self) -> usize {
        self.clusters.values().map(|c| c.del_count).sum()
    }

    /// Process the deletion of edge (u, v).
    pub fn dec_delete(&mut self, u: usize, v: usize) -> Result<DecOutcome> {
        if self.deletions >= self.deletion_budget {
            return Err(Error::Terminated);
        }
        self.g.delete_edge(u, v)?;
        self.deletions += 1;
        if self.cluster_of[u] != self.cluster_of[v] {
            return Ok(DecOutcome::InterCluster);
        }
        let id = self.cluster_of[u];
        self.clusters.get_mut(&id).expect("live cluster").del_count += 1;
        Ok(DecOutcome::Intra(self.prune(id)))
    }

    /// Re-establish phi/6-expansion of cluster `id` after an internal
    /// deletion whose DelCount is already counted; explode on any failed
    /// budget or certification.
    pub fn prune(&mut self, id: usize) -> ClusterChange {
        let cluster = self.clusters.get(&id).expect("live cluster");
        if cluster.del_count > cluster.budget {
            return self.explode(id);
        }
        let phi6 = self.phi.div(6);
        let mut remaining = cluster.members.clone();
        let mut newly_pruned: Vec<usize> = Vec::new();
        loop {
            let peel: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&w| {
                    if remaining.len() == 1 {
                        return false;
                    }
                    let deg_in =
                        self.g.neighbors(w).filter(|x| remaining.contains(x)).count() as u64;
                    let d = self.g.degree(w) as u64;
                    deg_in * phi6.den < phi6.num * d
                })
                .collect();
            if peel.is_empty() {
                break;
            }
            for w in peel {
                remaining.remove(&w);
                newly_pruned.push(w);
            }
        }
        // certify the remainder
        let certified = if remaining.len() <= 1 {
            true
        } else if remaining.len() <= EXACT_CAP {
            verify_expander(&self.g, &remaining, phi6).expect("within cap")
        } else {
            sweep_cut(&self.g, &remaining).0 >= phi6
                && induced_components(&self.g, &remaining).len() == 1
        };
        if !certified {
            return self.explode(id);
        }
        // budget checks from Theorem 4.3: vol(P_i) <= 8i/phi, |d(P_i)| <= 4i
        let cluster = self.clusters.get(&id).expect("live cluster");
        let i = cluster.del_count as u128;
        let pruned_all: BTreeSet<usize> =
            cluster.pruned.iter().chain(newly_pruned.iter()).copied().collect();
        let vol_p: u128 = pruned_all.iter().map(|&w| self.init_deg[w] as u128).sum();
        let boundary_p = pruned_all
            .iter()
            .flat_map(|&w| self.g.neighbors(w).map(move |x| (w, x)))
            .filter(|(_, x)| !pruned_all.contains(x))
            .count() as u128;
        let vol_ok = vol_p * self.phi.num as u128 <= 8 * i * self.phi.den as u128;
        let boundary_ok = boundary_p <= 4 * i;
        if !vol_ok || !boundary_ok {
            return self.explode(id);
        }
        // commit: pruned vertices become singleton clusters
        let cluster = self.clusters.get_mut(&id).expect("live cluster");
        for &w in &newly_pruned {
            cluster.members.remove(&w);
            cluster.pruned.insert(w);
        }
        for &w in &newly_pruned {
            self.spawn_singleton(w);
        }
        ClusterChange { cluster: id, pruned: newly_pruned, exploded: false }
    }

    fn explode(&mut self, id: usize) -> ClusterChange {
        let cluster = self.clusters.remove(&id).expect("live cluster");
        let mut pruned = Vec::new();
        for &w in &cluster.original {
            if self.cluster_of[w] == id {
                pruned.push(w);
                self.spawn_singleton(w);
            }
        }
        ClusterChange { cluster: id, pruned, exploded: true }
    }

    fn spawn_singleton(&mut self, w: usize) {
        let id = self.next_id;
        self.next_id += 1;
        self.cluster_of[w] = id;
        self.clusters.insert(
            id,
            ClusterInfo {
                members: BTreeSet::from([w]),
                original: BTreeSet::from([w]),
                vol0: self.init_deg[w],
                del_count: 0,
                pruned: BTreeSet::new(),
                budget: 0,
            },
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use rand::seq::SliceRandom;
    use rand::Rng;

    fn complete(n: usize) -> DynGraph {
        let mut g = DynGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v).unwrap();
            }
        }
        g
    }

    fn path(n: usize) -> DynGraph {
        let mut g = DynGraph::new(n);
        for u in 0..n - 1 {
            g.insert_edge(u, u + 1).unwrap();
        }
        g
    }

    fn cycle(n: usize) -> DynGraph {
        let mut g = path(n);
        g.insert_edge(0, n - 1).unwrap();
        g
    }

    #[test]
    fn conductance_hand_values() {
        let s: BTreeSet<usize> = [0].into();
        assert_eq!(conductance(&complete(4), &s).unwrap(), Ratio::new(1, 1));
        let p3: BTreeSet<usize> = [0, 1, 2].into();
        assert_eq!(conductance(&cycle(6), &p3).unwrap(), Ratio::new(2, 6));
        let mut g = DynGraph::new(5);
        g.insert_edge(0, 1).unwrap();
        g.insert_edge(2, 3).unwrap();
        g.insert_edge(3, 4).unwrap();
        let comp: BTreeSet<usize> = [0, 1].into();
        assert_eq!(conductance(&g, &comp).unwrap(), Ratio::zero());
        assert!(matches!(conductance(&g, &BTreeSet::new()), Err(Error::EmptySide)));
    }

    #[test]
    fn verify_expander_hand_cases() {
        let all5: BTreeSet<usize> = (0..5).collect();
        assert!(verify_expander(&complete(5), &all5, Ratio::new(1, 2)).unwrap());
        let all6: BTreeSet<usize> = (0..6).collect();
        assert!(!verify_expander(&path(6), &all6, Ratio::new(1, 2)).unwrap());
        let single: BTreeSet<usize> = [3].into();
        assert!(verify_expander(&path(6), &single, Ratio::new(1, 2)).unwrap());
        let big: BTreeSet<usize> = (0..17).collect();
        assert!(matches!(
            verify_expander(&complete(17), &big, Ratio::new(1, 2)),
            Err(Error::TooLarge(17, EXACT_CAP))
        ));
    }

    #[test]
    fn k10_is_one_cluster() {
        let part = ExpanderPartition::decompose(&complete(10), Ratio::new(1, 2));
        assert_eq!(part.clusters().count(), 1);
        assert_eq!(part.num_inter_cluster_edges(), 0);
    }

    #[test]
    fn bridged_cliques_split_on_the_bridge() {
        let mut g = DynGraph::new(16);
        for u in 0..8 {
            for v in u + 1..8 {
                g.insert_edge(u, v).unwrap();
                g.insert_edge(u + 8, v + 8).unwrap();
            }
        }
        g.insert_edge(0, 8).unwrap();
        let part = ExpanderPartition::decompose(&g, Ratio::new(3, 10));
        assert_eq!(part.clusters().count(), 2);
        assert_eq!(part.num_inter_cluster_edges(), 1);
        let left: BTreeSet<usize> = (0..8).collect();
        let (_, c) = part.clusters().find(|(_, c)| c.members.contains(&0)).unwrap();
        assert_eq!(c.members, left);
    }

    #[test]
    fn edgeless_graph_decomposes_to_singletons() {
        let part = ExpanderPartition::decompose(&DynGraph::new(7), Ratio::new(1, 2));
        assert_eq!(part.clusters().count(), 7);
    }

    #[test]
    fn decomposition_certifies_small_clusters_exactly() {
        for seed in 0..10u64 {
            let mut rng = stream(seed, "decg", 0);
            let n = 30;
            let mut g = DynGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.2) {
                        g.insert_edge(u, v).unwrap();
                    }
                }
            }
            let phi = Ratio::new(1, 4);
            let part = ExpanderPartition::decompose(&g, phi);
            for (_, c) in part.clusters() {
                if c.members.len() <= EXACT_CAP {
                    assert!(verify_expander(&g, &c.members, phi).unwrap(), "{:?}", c.members);
                }
            }
        }
    }

    #[test]
    fn sweep_cut_finds_the_planted_bottleneck() {
        // two 20-cliques joined by one edge: above the exact cap
        let mut g = DynGraph::new(40);
        for u in 0..20 {
            for v in u + 1..20 {
                g.insert_edge(u, v).unwrap();
                g.insert_edge(u + 20, v + 20).unwrap();
            }
        }
        g.insert_edge(0, 20).unwrap();
        let all: BTreeSet<usize> = (0..40).collect();
        let (phi, side) = sweep_cut(&g, &all);
        assert!(phi < Ratio::new(1, 100), "sweep conductance {:?}", phi);
        assert!(side.len() == 20);
    }

    #[test]
    fn inter_cluster_deletion_is_a_noop() {
        let mut g = DynGraph::new(16);
        for u in 0..8 {
            for v in u + 1..8 {
                g.insert_edge(u, v).unwrap();
                g.insert_edge(u + 8, v + 8).unwrap();
            }
        }
        g.insert_edge(0, 8).unwrap();
        let mut part = ExpanderPartition::decompose(&g, Ratio::new(3, 10));
        assert_eq!(part.dec_delete(0, 8).unwrap(), DecOutcome::InterCluster);
        assert_eq!(part.clusters().count(), 2);
    }

    #[test]
    fn single_internal_deletion_keeps_k10_whole() {
        let g = complete(10);
        let mut part = ExpanderPartition::decompose(&g, Ratio::new(1, 4));
        let (_, c) = part.clusters().next().unwrap();
        assert!(c.budget >= 1, "budget {}", c.budget);
        match part.dec_delete(0, 1).unwrap() {
            DecOutcome::Intra(ch) => {
                assert!(!ch.exploded);
                assert!(ch.pruned.is_empty());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn exceeding_the_counter_explodes_to_original_members() {
        let g = complete(8);
        let phi = Ratio::new(1, 4);
        let mut part = ExpanderPartition::decompose(&g, phi);
        let budget = part.clusters().next().unwrap().1.budget;
        let mut edges: Vec<(usize, usize)> = g.edges().collect();
        edges.shuffle(&mut stream(2, "kill", 0));
        let mut exploded = false;
        for (u, v) in edges {
            match part.dec_delete(u, v) {
                Ok(DecOutcome::Intra(ch)) if ch.exploded => {
                    exploded = true;
                    assert!(part.deletions() > budget);
                    break;
                }
                Ok(_) => {}
                Err(Error::Terminated) => break,
                Err(e) => panic!("{e}"),
            }
        }
        if exploded {
            assert_eq!(part.clusters().count(), 8);
            for (_, c) in part.clusters() {
                assert_eq!(c.members.len(), 1);
            }
        }
    }

    #[test]
    fn decremental_run_maintains_phi_over_six_and_accounting() {
        for seed in 0..6u64 {
            let mut rng = stream(seed, "decrun", 1);
            let n = 24;
            let mut g = DynGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.insert_edge(u, v).unwrap();
                    }
                }
            }
            let phi = Ratio::new(1, 4);
            let mut part = ExpanderPartition::decompose(&g, phi);
            let mut edges: Vec<(usize, usize)> = g.edges().collect();
            edges.shuffle(&mut rng);
            for (u, v) in edges {
                match part.dec_delete(u, v) {
                    Ok(_) => {}
                    Err(Error::Terminated) => break,
                    Err(e) => panic!("{e}"),
                }
                let phi6 = phi.div(6);
                for (_, c) in part.clusters() {
                    if c.members.len() > 1 && c.members.len() <= EXACT_CAP {
                        assert!(
                            verify_expander(part.graph(), &c.members, phi6).unwrap(),
                            "cluster {:?} lost phi/6 expansion",
                            c.members
                        );
                    }
                }
                // sum vol(P) <= (20/phi) sum DelCount
                let lhs = part.pruned_volume() as u128 * phi.num as u128;
                let rhs = 20 * part.total_del_count() as u128 * phi.den as u128;
                assert!(lhs <= rhs, "accounting violated: {lhs} > {rhs}");
            }
        }
    }
}
