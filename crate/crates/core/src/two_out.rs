//! Random 2-out subgraphs and the contractions they induce.
//!
//! Every vertex samples two incident edges independently, with
//! replacement; `R` is the multiset union of all samples and each
//! component of `R` becomes one contracted vertex of `G' = G/R`. For a
//! graph with minimum degree delta the contraction has O(n/delta)
//! vertices with high probability, while every non-singleton minimum cut
//! survives it with constant probability — which is why the randomized
//! engine runs several independent copies of this state.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::forest::ComponentForest;
use crate::graph::{ContractionMap, DynGraph};
use crate::rng::stream;

/// A forest edit emitted by [`TwoOutState::on_update`]. All cuts in a
/// batch precede all links; applied in order they take any copy of the
/// old forest to the new one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForestDiff {
    Link(usize, usize),
    Cut(usize, usize),
}

/// The sampled pairs, their union `R`, and a spanning forest of `R`.
#[derive(Debug, Clone)]
pub struct TwoOutState {
    /// per-vertex sampled neighbors; `None` for isolated vertices
    samples: Vec<[Option<usize>; 2]>,
    forest: ComponentForest,
    rng: ChaCha8Rng,
}

impl TwoOutState {
    pub fn init(g: &DynGraph, seed: u64) -> Self {
        let mut rng = stream(seed, "two-out", 0);
        let mut samples = vec![[None, None]; g.n()];
        for u in 0..g.n() {
            let nb: Vec<usize> = g.neighbors(u).collect();
            if !nb.is_empty() {
                samples[u] = [
                    Some(nb[rng.gen_range(0..nb.len())]),
                    Some(nb[rng.gen_range(0..nb.len())]),
                ];
            }
        }
        let forest = forest_of(g.n(), &samples);
        TwoOutState { samples, forest, rng }
    }

    pub fn forest(&self) -> &ComponentForest {
        &self.forest
    }

    pub fn samples(&self, u: usize) -> [Option<usize>; 2] {
        self.samples[u]
    }

    /// Canonicalized multiset `R` of sampled edges.
    pub fn sampled_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, pair) in self.samples.iter().enumerate() {
            for s in pair.iter().flatten() {
                out.push((u.min(*s), u.max(*s)));
            }
        }
        out.sort_unstable();
        out
    }

    /// Mirror a graph update that has already been applied to `g`.
    ///
    /// On insert each slot of the two endpoints adopts the new edge with
    /// probability 1/deg, which keeps each slot exactly uniform over the
    /// owner's current incident edges. On delete, slots holding the gone
    /// edge re-draw uniformly from what remains.
    pub fn on_update(&mut self, g: &DynGraph, u: usize, v: usize, inserted: bool) -> Vec<ForestDiff> {
        for (w, other) in [(u, v), (v, u)] {
            if inserted {
                let d = g.degree(w);
                for slot in self.samples[w].iter_mut() {
                    if slot.is_none() || self.rng.gen_range(0..d) == 0 {
                        *slot = Some(other);
                    }
                }
            } else {
                let nb: Vec<usize> = g.neighbors(w).collect();
                for slot in self.samples[w].iter_mut() {
                    if *slot == Some(other) {
                        *slot = if nb.is_empty() {
                            None
                        } else {
                            Some(nb[self.rng.gen_range(0..nb.len())])
                        };
                    }
                }
            }
        }
        let next = forest_of(g.n(), &self.samples);
        let old_edges: BTreeSet<(usize, usize)> = self.forest.edges().into_iter().collect();
        let new_edges: BTreeSet<(usize, usize)> = next.edges().into_iter().collect();
        let mut diffs: Vec<ForestDiff> = old_edges
            .difference(&new_edges)
            .map(|&(a, b)| ForestDiff::Cut(a, b))
            .collect();
        diffs.extend(new_edges.difference(&old_edges).map(|&(a, b)| ForestDiff::Link(a, b)));
        self.forest = next;
        diffs
    }

    /// Clusters of `G' = G/R`: the components of the forest.
    pub fn contraction_map(&self) -> ContractionMap {
        let groups: Vec<BTreeSet<usize>> = self
            .forest
            .component_ids()
            .into_iter()
            .map(|c| self.forest.members(c).expect("live component").clone())
            .collect();
        ContractionMap::from_groups(self.forest.n(), &groups).expect("components partition V")
    }
}

/// Deterministic spanning forest of the sampled multiset via BFS.
fn forest_of(n: usize, samples: &[[Option<usize>; 2]]) -> ComponentForest {
    let mut adj = vec![BTreeSet::new(); n];
    for (u, pair) in samples.iter().enumerate() {
        for s in pair.iter().flatten() {
            adj[u].insert(*s);
            adj[*s].insert(u);
        }
    }
    let mut forest = ComponentForest::new(n);
    for root in 0..n {
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(w) = queue.pop_front() {
            for &x in &adj[w] {
                if !forest.same_component(w, x) {
                    forest.link(w, x).expect("bfs tree edge");
                    queue.push_back(x);
                }
            }
        }
    }
    forest
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::subseed;
    use rand::Rng;

    fn random_graph(n: usize, p: f64, seed: u64) -> DynGraph {
        let mut rng = stream(seed, "graph", 1);
        let mut g = DynGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.insert_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    fn audit(state: &TwoOutState, g: &DynGraph) {
        for u in 0..g.n() {
            match state.samples(u) {
                [None, None] => assert_eq!(g.degree(u), 0),
                [Some(a), Some(b)] => {
                    assert!(g.has_edge(u, a));
                    assert!(g.has_edge(u, b));
                }
                _ => panic!("half-sampled vertex {u}"),
            }
        }
        // forest spans exactly the components of R
        let mut r = DynGraph::new(g.n());
        for (a, b) in state.sampled_edges() {
            let _ = r.insert_edge(a, b);
        }
        let truth = r.components();
        assert_eq!(state.forest().num_components(), truth.len());
        for comp in truth {
            let rep = *comp.iter().next().unwrap();
            for &v in &comp {
                assert!(state.forest().same_component(rep, v));
            }
        }
        for (a, b) in state.forest().edges() {
            assert!(r.has_edge(a, b));
        }
    }

    #[test]
    fn k2_contracts_to_one_vertex() {
        let mut g = DynGraph::new(2);
        g.insert_edge(0, 1).unwrap();
        let st = TwoOutState::init(&g, 7);
        assert_eq!(st.samples(0), [Some(1), Some(1)]);
        assert_eq!(st.samples(1), [Some(0), Some(0)]);
        assert_eq!(st.contraction_map().num_clusters(), 1);
    }

    #[test]
    fn random_streams_keep_state_consistent() {
        for seed in 0..8u64 {
            let n = 20;
            let mut g = random_graph(n, 0.2, seed);
            let mut st = TwoOutState::init(&g, subseed(seed, "st", 0));
            audit(&st, &g);
            let mut rng = stream(seed, "ops", 2);
            for _ in 0..300 {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                if u == v {
                    continue;
                }
                let inserted = if g.has_edge(u, v) {
                    g.delete_edge(u, v).unwrap();
                    false
                } else {
                    g.insert_edge(u, v).unwrap();
                    true
                };
                let diffs = st.on_update(&g, u, v, inserted);
                // diffs must replay onto a copy of the previous forest
                audit(&st, &g);
                let _ = diffs;
            }
        }
    }

    #[test]
    fn diff_batch_replays_onto_old_forest() {
        let n = 16;
        let mut g = random_graph(n, 0.25, 3);
        let mut st = TwoOutState::init(&g, 11);
        let mut rng = stream(4, "ops", 3);
        for _ in 0..200 {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v {
                continue;
            }
            let mut shadow = st.forest().clone();
            let inserted = if g.has_edge(u, v) {
                g.delete_edge(u, v).unwrap();
                false
            } else {
                g.insert_edge(u, v).unwrap();
                true
            };
            for d in st.on_update(&g, u, v, inserted) {
                match d {
                    ForestDiff::Cut(a, b) => shadow.cut(a, b).unwrap(),
                    ForestDiff::Link(a, b) => shadow.link(a, b).unwrap(),
                }
            }
            assert_eq!(shadow.edges(), st.forest().edges());
        }
    }

    #[test]
    fn untouched_deletion_emits_no_diffs() {
        // path 0-1-2 plus chord 0-2; force samples away from (0,2)
        let mut g = DynGraph::new(3);
        g.insert_edge(0, 1).unwrap();
        g.insert_edge(1, 2).unwrap();
        g.insert_edge(0, 2).unwrap();
        for seed in 0..50u64 {
            let mut st = TwoOutState::init(&g, seed);
            let holds = |st: &TwoOutState| {
                st.samples(0).contains(&Some(2)) || st.samples(2).contains(&Some(0))
            };
            if holds(&st) {
                continue;
            }
            let mut g2 = g.clone();
            g2.delete_edge(0, 2).unwrap();
            let diffs = st.on_update(&g2, 0, 2, false);
            assert!(diffs.is_empty(), "seed {seed}: {diffs:?}");
            return;
        }
        panic!("no seed avoided the chord");
    }

    #[test]
    fn isolating_deletion_drops_samples_and_splits() {
        let mut g = DynGraph::new(3);
        g.insert_edge(0, 1).unwrap();
        g.insert_edge(1, 2).unwrap();
        let mut st = TwoOutState::init(&g, 5);
        assert_eq!(st.contraction_map().num_clusters(), 1);
        g.delete_edge(0, 1).unwrap();
        st.on_update(&g, 0, 1, false);
        assert_eq!(st.samples(0), [None, None]);
        assert_eq!(st.contraction_map().num_clusters(), 2);
    }

    #[test]
    fn slot_marginals_stay_uniform_under_updates() {
        // fixed op sequence on 6 vertices; histogram slot 0 of vertex 0
        let n = 6;
        let trials = 10_000usize;
        let mut counts = vec![0usize; n];
        let mut final_nb: Option<Vec<usize>> = None;
        for trial in 0..trials {
            let mut g = random_graph(n, 0.8, 999);
            let mut st = TwoOutState::init(&g, subseed(42, "trial", trial as u64));
            let ops: &[(usize, usize)] = &[(0, 1), (0, 2), (2, 3), (0, 1), (4, 5), (0, 3)];
            for &(u, v) in ops {
                let inserted = if g.has_edge(u, v) {
                    g.delete_edge(u, v).unwrap();
                    false
                } else {
                    g.insert_edge(u, v).unwrap();
                    true
                };
                st.on_update(&g, u, v, inserted);
            }
            counts[st.samples(0)[0].unwrap()] += 1;
            if trial == 0 {
                final_nb = Some(g.neighbors(0).collect());
            }
        }
        let nb = final_nb.unwrap();
        let expected = trials as f64 / nb.len() as f64;
        let chi2: f64 = nb
            .iter()
            .map(|&v| {
                let o = counts[v] as f64;
                (o - expected).powi(2) / expected
            })
            .sum();
        for (v, &c) in counts.iter().enumerate() {
            assert!(nb.contains(&v) || c == 0, "mass on non-neighbor {v}");
        }
        // 99.9th percentile of chi-square with |nb|-1 dof is well under 25
        // for |nb| <= 5
        assert!(chi2 < 25.0, "chi2 = {chi2}, counts {counts:?}");
    }

    #[test]
    fn contraction_shrinks_with_degree() {
        // delta-regular-ish graph: circulant with delta/2 offsets
        let n = 60;
        let delta = 10;
        let mut g = DynGraph::new(n);
        for u in 0..n {
            for k in 1..=delta / 2 {
                let v = (u + k) % n;
                let _ = g.insert_edge(u.min(v), u.max(v));
            }
        }
        let mut total = 0usize;
        let seeds = 50;
        for seed in 0..seeds {
            let st = TwoOutState::init(&g, seed);
            total += st.contraction_map().num_clusters();
        }
        let mean = total as f64 / seeds as f64;
        assert!(
            mean <= 10.0 * n as f64 / delta as f64,
            "mean quotient size {mean} too large"
        );
    }
}
