//! The randomized fully dynamic edge-connectivity engine.
//!
//! For the degree range containing the current minimum degree delta it
//! keeps T independent repetitions, each pairing a random 2-out
//! contraction with a dynamic delta_0-certificate structure over the
//! contracted graph. A query takes the best of the min-degree cut and,
//! per repetition, an exact min cut of the extracted certificate — and
//! every candidate is re-evaluated as a cut of the real graph before it
//! is believed, so answers are never below the true connectivity.

use std::collections::BTreeSet;

use crate::certificate::CertStructure;
use crate::error::Result;
use crate::graph::DynGraph;
use crate::oracle::stoer_wagner;
use crate::rng::subseed;
use crate::two_out::TwoOutState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnswerSource {
    /// the graph is already disconnected (or too small to cut)
    Disconnected,
    /// the singleton cut around a minimum-degree vertex
    MinDegree,
    /// certificate min cut found by this repetition
    Repetition(usize),
    /// deterministic engine: the small-connectivity structure answered
    SmallCut,
    /// deterministic engine: the sparsifier-based estimator answered
    Sparsifier,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityAnswer {
    pub lambda: usize,
    /// a real cut of G with exactly `lambda` edges
    pub witness: Vec<(usize, usize)>,
    pub source: AnswerSource,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandEngineConfig {
    pub t_reps: usize,
    pub tau_const: f64,
    pub seed: u64,
}

impl Default for RandEngineConfig {
    fn default() -> Self {
        RandEngineConfig { t_reps: 8, tau_const: 1.0, seed: 0 }
    }
}

#[derive(Debug, Clone)]
struct Repetition {
    two_out: TwoOutState,
    cert: CertStructure,
}

#[derive(Debug, Clone)]
struct RangeStructure {
    /// range index i covers min degree in [2^i, 2^{i+1})
    index: u32,
    reps: Vec<Repetition>,
    updates_seen: usize,
    last_used: u64,
}

impl RangeStructure {
    fn build(g: &DynGraph, index: u32, cfg: &RandEngineConfig, epoch: u64) -> Self {
        let delta0 = 1usize << (index + 1);
        let reps = (0..cfg.t_reps)
            .map(|t| Repetition {
                two_out: TwoOutState::init(
                    g,
                    subseed(cfg.seed, "two-out", epoch ^ ((index as u64) << 32) ^ t as u64),
                ),
                cert: CertStructure::new(
                    g,
                    delta0,
                    cfg.tau_const,
                    subseed(cfg.seed, "cert", ((index as u64) << 32) ^ t as u64),
                ),
            })
            .collect();
        RangeStructure { index, reps, updates_seen: 0, last_used: 0 }
    }
}

#[derive(Debug, Clone)]
pub struct RandEngine {
    g: DynGraph,
    cfg: RandEngineConfig,
    /// at most two live ranges, evicted least-recently-used
    ranges: Vec<RangeStructure>,
    clock: u64,
    rebuild_epoch: u64,
    last_answer: Option<ConnectivityAnswer>,
    work: u64,
}

impl RandEngine {
    pub fn new(g: DynGraph, cfg: RandEngineConfig) -> Self {
        RandEngine {
            g,
            cfg,
            ranges: Vec::new(),
            clock: 0,
            rebuild_epoch: 0,
            last_answer: None,
            work: 0,
        }
    }

    pub fn graph(&self) -> &DynGraph {
        &self.g
    }

    /// Cumulative touched-work counter (sketch rows, components, edges).
    pub fn work_units(&self) -> u64 {
        self.work
    }

    pub fn update(&mut self, u: usize, v: usize, inserted: bool) -> Result<()> {
        if inserted {
            self.g.insert_edge(u, v)?;
        } else {
            self.g.delete_edge(u, v)?;
        }
        self.last_answer = None;
        let n = self.g.n().max(1);
        let g = &self.g;
        let t_reps = self.cfg.t_reps.max(1);
        for range in &mut self.ranges {
            range.updates_seen += 1;
            let cfg = *range.reps[0].cert.config();
            self.work += (range.reps.len() * cfg.k_prime * cfg.stacks * 2) as u64;
            for (t, rep) in range.reps.iter_mut().enumerate() {
                rep.cert.update(u, v, inserted)?;
                // staggered full resample: repetition t refreshes when the
                // range's update count passes t * n / T within each n-window
                let phase = (range.updates_seen + t * n / t_reps) % n;
                if phase == 0 {
                    self.rebuild_epoch += 1;
                    rep.two_out = TwoOutState::init(
                        g,
                        subseed(self.cfg.seed, "resample", self.rebuild_epoch),
                    );
                    self.work += n as u64;
                } else {
                    rep.two_out.on_update(g, u, v, inserted);
                    self.work += 2;
                }
            }
        }
        Ok(())
    }

    pub fn query(&mut self) -> Result<ConnectivityAnswer> {
        self.clock += 1;
        let answer = self.compute_answer()?;
        self.last_answer = Some(answer.clone());
        Ok(answer)
    }

    /// Witness edges of the last query's cut. Documented oblivious-
    /// adversary-only: revealing edges lets an adversary adapt.
    pub fn report_cut(&self) -> Result<Vec<(usize, usize)>> {
        self.last_answer
            .as_ref()
            .map(|a| a.witness.clone())
            .ok_or(crate::error::Error::NoWitness)
    }

    fn compute_answer(&mut self) -> Result<ConnectivityAnswer> {
        if self.g.n() < 2 || self.g.components().len() > 1 {
            self.work += self.g.n() as u64;
            return Ok(ConnectivityAnswer {
                lambda: 0,
                witness: Vec::new(),
                source: AnswerSource::Disconnected,
            });
        }
        let delta = self.g.min_degree();
        let pivot = self.g.min_degree_vertex().expect("non-empty graph");
        let mut best = ConnectivityAnswer {
            lambda: delta,
            witness: self.g.neighbors(pivot).map(|w| canon(pivot, w)).collect(),
            source: AnswerSource::MinDegree,
        };
        let index = usize::BITS - 1 - delta.leading_zeros();
        if (1usize << (index + 1)) <= self.g.n() {
            let slot = self.ensure_range(index);
            let range = &self.ranges[slot];
            for (t, rep) in range.reps.iter().enumerate() {
                let forest = rep.two_out.forest();
                let cert = rep.cert.query(forest)?;
                self.work += (cert.edges.len() + forest.num_components()) as u64;
                let h = cert.to_multigraph();
                if h.num_vertices() < 2 {
                    continue;
                }
                let sw = stoer_wagner(&h)?;
                if sw.value >= best.lambda {
                    continue;
                }
                // lift the candidate side and re-evaluate it in G exactly
                let mut side = BTreeSet::new();
                for &c in &sw.side {
                    side.extend(forest.members(c)?.iter().copied());
                }
                let exact = self.g.cut_size(&side);
                self.work += self.g.n() as u64;
                if exact < best.lambda {
                    best = ConnectivityAnswer {
                        lambda: exact,
                        witness: self.crossing_edges(&side),
                        source: AnswerSource::Repetition(t),
                    };
                }
            }
        }
        Ok(best)
    }

    fn crossing_edges(&self, side: &BTreeSet<usize>) -> Vec<(usize, usize)> {
        self.g
            .edges()
            .filter(|&(a, b)| side.contains(&a) != side.contains(&b))
            .collect()
    }

    fn ensure_range(&mut self, index: u32) -> usize {
        if let Some(pos) = self.ranges.iter().position(|r| r.index == index) {
            self.ranges[pos].last_used = self.clock;
            return pos;
        }
        let built = RangeStructure {
            last_used: self.clock,
            ..RangeStructure::build(&self.g, index, &self.cfg, self.rebuild_epoch)
        };
        self.work += (self.g.m() * self.cfg.t_reps) as u64;
        if self.ranges.len() >= 2 {
            let evict = self
                .ranges
                .iter()
                .enumerate()
                .min_by_key(|(_, r)| r.last_used)
                .map(|(i, _)| i)
                .expect("non-empty");
            self.ranges.swap_remove(evict);
        }
        self.ranges.push(built);
        self.ranges.len() - 1
    }
}

fn canon(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultiGraph;
    use crate::rng::stream;
    use rand::Rng;

    fn engine(g: DynGraph, t: usize, seed: u64) -> RandEngine {
        RandEngine::new(g, RandEngineConfig { t_reps: t, tau_const: 1.0, seed })
    }

    fn oracle_lambda(g: &DynGraph) -> usize {
        if g.n() < 2 || g.components().len() > 1 {
            return 0;
        }
        stoer_wagner(&MultiGraph::from_graph(g)).unwrap().value
    }

    fn complete(n: usize) -> DynGraph {
        let mut g = DynGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v).unwrap();
            }
        }
        g
    }

    #[test]
    fn empty_graph_answers_zero() {
        let mut e = engine(DynGraph::new(5), 2, 1);
        let a = e.query().unwrap();
        assert_eq!(a.lambda, 0);
        assert_eq!(a.source, AnswerSource::Disconnected);
    }

    #[test]
    fn k4_initial_query_is_three() {
        let mut e = engine(complete(4), 4, 2);
        assert_eq!(e.query().unwrap().lambda, 3);
    }

    #[test]
    fn star_uses_min_degree_branch() {
        let mut g = DynGraph::new(6);
        for v in 1..6 {
            g.insert_edge(0, v).unwrap();
        }
        let mut e = engine(g, 2, 3);
        let a = e.query().unwrap();
        assert_eq!(a.lambda, 1);
        assert_eq!(a.source, AnswerSource::MinDegree);
        assert_eq!(a.witness.len(), 1);
    }

    #[test]
    fn two_cliques_bridged_by_three_edges() {
        // delta = 5 but lambda = 3 via a non-singleton cut
        let mut g = DynGraph::new(12);
        for u in 0..6 {
            for v in u + 1..6 {
                g.insert_edge(u, v).unwrap();
                g.insert_edge(u + 6, v + 6).unwrap();
            }
        }
        for k in 0..3 {
            g.insert_edge(k, k + 6).unwrap();
        }
        let mut hits = 0;
        for seed in 0..10 {
            let mut e = engine(g.clone(), 32, seed);
            let a = e.query().unwrap();
            assert!(a.lambda >= 3, "unsound answer {}", a.lambda);
            if a.lambda == 3 {
                assert_eq!(a.witness, vec![(0, 6), (1, 7), (2, 8)]);
                hits += 1;
            }
        }
        assert!(hits >= 8, "only {hits}/10 seeds found the bridge cut");
    }

    #[test]
    fn update_on_absent_edge_errors() {
        let mut e = engine(complete(3), 1, 4);
        assert!(e.update(0, 1, true).is_err());
        assert!(e.update(1, 2, false).is_ok());
        assert!(e.update(1, 2, false).is_err());
    }

    #[test]
    fn random_stream_sound_and_mostly_exact() {
        let n = 16;
        let mut g = DynGraph::new(n);
        let mut e = engine(g.clone(), 8, 9);
        let mut rng = stream(12, "ops", 5);
        let mut exact = 0;
        let steps = 120;
        for _ in 0..steps {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v {
                continue;
            }
            let inserted = !g.has_edge(u, v);
            if inserted {
                g.insert_edge(u, v).unwrap();
            } else {
                g.delete_edge(u, v).unwrap();
            }
            e.update(u, v, inserted).unwrap();
            let truth = oracle_lambda(&g);
            let got = e.query().unwrap();
            assert!(got.lambda >= truth, "unsound: {} < {}", got.lambda, truth);
            if got.lambda == truth {
                exact += 1;
                if truth > 0 {
                    // witness really disconnects: its size equals lambda and
                    // removing it splits the graph
                    let mut stripped = g.clone();
                    for &(a, b) in &got.witness {
                        stripped.delete_edge(a, b).unwrap();
                    }
                    assert_eq!(got.witness.len(), truth);
                    assert!(stripped.components().len() > 1);
                }
            }
        }
        assert!(exact * 10 >= steps * 9, "exact on {exact}/{steps}");
    }

    #[test]
    fn report_cut_requires_a_query() {
        let mut e = engine(complete(3), 1, 5);
        assert!(e.report_cut().is_err());
        e.query().unwrap();
        assert_eq!(e.report_cut().unwrap().len(), 2);
    }
}
