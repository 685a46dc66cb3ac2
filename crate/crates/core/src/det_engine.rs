//! The deterministic fully dynamic edge-connectivity engine.
//!
//! Two sub-engines run in parallel, split on a threshold tau. A1 is a
//! small-connectivity engine whose answers are trusted only while
//! lambda <= eta = tau + 1; A2 maintains an NMC sparsifier at
//! phi = 240/tau and answers min(delta, mincut of the exported H').
//! Both ingest every update so switching the active engine needs no
//! replay; the switch decision is taken after the active engine has
//! processed the update, per the tau / tau+1 boundary rules.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::expander::Ratio;
use crate::graph::{DynGraph, MultiGraph};
use crate::nmc::SparsifierState;
use crate::oracle::{capped_mincut, stoer_wagner, CappedCut, CutResult};
use crate::rand_engine::{AnswerSource, ConnectivityAnswer};

/// Interface for the A1 slot: any structure whose `current_lambda` is
/// exact whenever lambda(G) <= eta and returns some sentinel >= eta + 1
/// above that window.
pub trait SmallCutEngine {
    fn update(&mut self, u: usize, v: usize, inserted: bool) -> Result<()>;

    /// lambda(G) exactly when lambda(G) <= eta; any value > eta otherwise.
    fn current_lambda(&mut self) -> usize;

    /// One side of a cut realizing `current_lambda`, when that value is
    /// exact. `None` above the window.
    fn witness(&mut self) -> Option<CutResult>;
}

/// Default A1: an early-aborting static recompute. Each query runs a
/// min-cut computation truncated at eta, which is contract-equivalent
/// to (and swappable with) an asymptotically faster structure.
pub struct CappedRecompute {
    g: DynGraph,
    eta: usize,
    cached: Option<(usize, Option<CutResult>)>,
}

impl CappedRecompute {
    pub fn new(g: DynGraph, eta: usize) -> Self {
        CappedRecompute { g, eta, cached: None }
    }

    fn refresh(&mut self) {
        if self.cached.is_some() {
            return;
        }
        if self.g.n() < 2 {
            self.cached = Some((0, None));
            return;
        }
        self.cached = Some(match capped_mincut(&MultiGraph::from_graph(&self.g), self.eta) {
            Ok(CappedCut::Exact(cr)) => (cr.value, Some(cr)),
            Ok(CappedCut::AboveCap) | Err(_) => (self.eta + 1, None),
        });
    }
}

impl SmallCutEngine for CappedRecompute {
    fn update(&mut self, u: usize, v: usize, inserted: bool) -> Result<()> {
        if inserted {
            self.g.insert_edge(u, v)?;
        } else {
            self.g.delete_edge(u, v)?;
        }
        self.cached = None;
        Ok(())
    }

    fn current_lambda(&mut self) -> usize {
        self.refresh();
        self.cached.as_ref().unwrap().0
    }

    fn witness(&mut self) -> Option<CutResult> {
        self.refresh();
        self.cached.as_ref().unwrap().1.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Active {
    /// A1, answers while lambda <= tau
    SmallCut,
    /// A2, answers while lambda >= tau
    Sparsifier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetEngineConfig {
    /// switch threshold; phi * tau = 240 exactly
    pub tau: usize,
}

impl DetEngineConfig {
    /// The paper's balance point: tau = ceil(m^{1/8} / n^{1/16}),
    /// evaluated once at construction (m drifts afterwards).
    pub fn for_graph(g: &DynGraph) -> Self {
        let m = g.edges().count().max(1) as f64;
        let n = g.n().max(1) as f64;
        let tau = (m.powf(1.0 / 8.0) / n.powf(1.0 / 16.0)).ceil() as usize;
        DetEngineConfig { tau: tau.max(1) }
    }

    pub fn with_tau(tau: usize) -> Self {
        assert!(tau >= 1);
        DetEngineConfig { tau }
    }

    pub fn phi(&self) -> Ratio {
        Ratio::new(240, self.tau as u64)
    }

    pub fn eta(&self) -> usize {
        self.tau + 1
    }
}

pub struct DetEngine {
    g: DynGraph,
    cfg: DetEngineConfig,
    small: Box<dyn SmallCutEngine>,
    sparsifier: SparsifierState,
    active: Active,
    work: u64,
}

impl DetEngine {
    pub fn new(g: DynGraph, cfg: DetEngineConfig) -> Self {
        let small = Box::new(CappedRecompute::new(g.clone(), cfg.eta()));
        Self::with_small_engine(g, cfg, small)
    }

    pub fn with_small_engine(
        g: DynGraph,
        cfg: DetEngineConfig,
        mut small: Box<dyn SmallCutEngine>,
    ) -> Self {
        let sparsifier = SparsifierState::build(&g, cfg.phi());
        let active =
            if small.current_lambda() <= cfg.tau { Active::SmallCut } else { Active::Sparsifier };
        DetEngine { g, cfg, small, sparsifier, active, work: 0 }
    }

    pub fn graph(&self) -> &DynGraph {
        &self.g
    }

    pub fn config(&self) -> DetEngineConfig {
        self.cfg
    }

    pub fn active(&self) -> Active {
        self.active
    }

    pub fn work_units(&self) -> u64 {
        self.work
    }

    pub fn update(&mut self, u: usize, v: usize, inserted: bool) -> Result<()> {
        if inserted {
            self.g.insert_edge(u, v)?;
        } else {
            self.g.delete_edge(u, v)?;
        }
        self.small.update(u, v, inserted)?;
        self.sparsifier.fd_update(u, v, inserted)?;
        self.work += 1;
        // the active engine processed the update; now decide who answers
        // the next operation
        match self.active {
            Active::SmallCut => {
                if self.small.current_lambda() > self.cfg.tau {
                    self.active = Active::Sparsifier;
                }
            }
            Active::Sparsifier => {
                if self.sparsifier_answer().lambda <= self.cfg.tau {
                    self.active = Active::SmallCut;
                }
            }
        }
        Ok(())
    }

    pub fn query(&mut self) -> Result<ConnectivityAnswer> {
        Ok(match self.active {
            Active::SmallCut => {
                let lambda = self.small.current_lambda();
                debug_assert!(lambda <= self.cfg.eta());
                let witness = match self.small.witness() {
                    Some(cr) => self.crossing_edges(&cr.side),
                    None => Vec::new(),
                };
                ConnectivityAnswer { lambda, witness, source: AnswerSource::SmallCut }
            }
            Active::Sparsifier => {
                // validity window: A2 only answers while lambda >= tau,
                // so the min degree is at least tau as well
                assert!(
                    self.g.min_degree() >= self.cfg.tau,
                    "sparsifier engine active below its validity window"
                );
                self.sparsifier_answer()
            }
        })
    }

    /// min(delta, min cut of the exported sparsifier H'), with the H'
    /// candidate lifted through the contraction map and re-measured in
    /// G so the reported value is always a real cut size.
    fn sparsifier_answer(&mut self) -> ConnectivityAnswer {
        let comps = self.g.components();
        if self.g.n() < 2 || comps.len() > 1 {
            let witness = Vec::new();
            return ConnectivityAnswer { lambda: 0, witness, source: AnswerSource::Disconnected };
        }
        let delta = self.g.min_degree();
        let center = self.g.min_degree_vertex().expect("connected graph");
        let mut side: BTreeSet<usize> = BTreeSet::from([center]);
        let mut lambda = delta;
        let (h, cmap) = self.sparsifier.export_with_map();
        self.work += h.total_multiplicity() as u64;
        if h.num_vertices() >= 2 {
            if let Ok(cr) = stoer_wagner(&h) {
                let lifted: BTreeSet<usize> =
                    (0..self.g.n()).filter(|&u| cr.side.contains(&cmap.cluster_of(u))).collect();
                let value = self.g.cut_size(&lifted);
                if value < lambda {
                    lambda = value;
                    side = lifted;
                }
            }
        }
        let witness = self.crossing_edges(&side);
        ConnectivityAnswer { lambda, witness, source: AnswerSource::Sparsifier }
    }

    fn crossing_edges(&self, side: &BTreeSet<usize>) -> Vec<(usize, usize)> {
        self.g.edges().filter(|&(u, v)| side.contains(&u) != side.contains(&v)).collect()
    }
}
