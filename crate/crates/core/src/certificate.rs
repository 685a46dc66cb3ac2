//! Sparse k-connectivity certificates, static and dynamic.
//!
//! A k-connectivity certificate of G is a subgraph H with
//! `min(k, cut_H(S)) = min(k, cut_G(S))` for every bipartition S. The
//! static route peels k nested spanning forests; the randomized route
//! splits edges into color classes and certifies each class to a smaller
//! threshold. The dynamic structure keeps, per color, a grid of sketch
//! banks so that a certificate of the contracted graph G' can be
//! extracted at query time by repeated Boruvka passes, without ever
//! touching the persistent banks.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::forest::{boruvka_extend, ComponentForest};
use crate::graph::{ContractionMap, DynGraph, MultiGraph};
use crate::rng::subseed;
use crate::sketch::{SketchBank, SketchTransform};

/// Derived parameters for the color-splitting reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertificateConfig {
    pub n: usize,
    /// the connectivity threshold k (the engine's delta_0)
    pub k: usize,
    /// number of colors c = max(1, floor(k / (4 tau ln n)))
    pub colors: usize,
    /// per-color threshold k' = min(k, ceil(6 tau log2 n)); k when c = 1
    pub k_prime: usize,
    /// Boruvka stacks per round
    pub stacks: usize,
}

impl CertificateConfig {
    pub fn new(n: usize, k: usize, tau_const: f64) -> Self {
        let nf = n.max(2) as f64;
        let colors = ((k as f64 / (4.0 * tau_const * nf.ln())).floor() as usize).max(1);
        let k_prime = if colors == 1 {
            k
        } else {
            k.min(((6.0 * tau_const * nf.log2()).ceil() as usize).max(1))
        };
        let stacks = (usize::BITS - n.max(2).leading_zeros()) as usize + 2;
        CertificateConfig { n, k, colors, k_prime, stacks }
    }
}

/// One certificate edge between supervertices, with the G-edge it came
/// from when the sketch path recovered one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertEdge {
    pub a: usize,
    pub b: usize,
    pub orig: Option<(usize, usize)>,
}

/// A certificate as an edge multiset over an explicit vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub vertices: Vec<usize>,
    pub edges: Vec<CertEdge>,
}

impl Certificate {
    pub fn to_multigraph(&self) -> MultiGraph {
        let mut mg = MultiGraph::new(self.vertices.clone());
        for e in &self.edges {
            mg.add_edge(e.a, e.b, 1);
        }
        mg
    }
}

/// Algorithm 1: peel k nested spanning forests and return their union.
pub fn seq_certificate(g: &MultiGraph, k: usize) -> Certificate {
    let mut remaining: BTreeMap<(usize, usize), usize> = g.edge_pairs().collect();
    let mut edges = Vec::new();
    for _ in 0..k {
        let mut forest: BTreeMap<usize, usize> = g.vertices().iter().map(|&v| (v, v)).collect();
        fn find(f: &mut BTreeMap<usize, usize>, v: usize) -> usize {
            let p = f[&v];
            if p == v {
                return v;
            }
            let r = find(f, p);
            f.insert(v, r);
            r
        }
        let mut grew = false;
        for (&(a, b), mult) in remaining.iter_mut() {
            if *mult == 0 {
                continue;
            }
            let (ra, rb) = (find(&mut forest, a), find(&mut forest, b));
            if ra != rb {
                forest.insert(ra, rb);
                *mult -= 1;
                edges.push(CertEdge { a, b, orig: None });
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    Certificate { vertices: g.vertices().to_vec(), edges }
}

/// Color of one parallel-edge unit; stable across insert and delete.
pub fn color_of(u: usize, v: usize, unit: usize, phase_seed: u64, colors: usize) -> usize {
    let (a, b) = (u.min(v), u.max(v));
    let key = subseed(subseed(phase_seed, "color", a as u64), "", b as u64);
    (subseed(key, "unit", unit as u64) % colors as u64) as usize
}

/// Algorithm 2: color-split g, certify each class to k', take the union.
pub fn parallel_certificate(g: &MultiGraph, k: usize, tau_const: f64, seed: u64) -> Certificate {
    let cfg = CertificateConfig::new(g.num_vertices(), k, tau_const);
    let mut classes = vec![MultiGraph::new(g.vertices().to_vec()); cfg.colors];
    for ((a, b), w) in g.edge_pairs() {
        for unit in 0..w {
            classes[color_of(a, b, unit, seed, cfg.colors)].add_edge(a, b, 1);
        }
    }
    let mut edges = Vec::new();
    for class in &classes {
        edges.extend(seq_certificate(class, cfg.k_prime).edges);
    }
    Certificate { vertices: g.vertices().to_vec(), edges }
}

/// Dynamic delta_0-certificate structure: per color an explicit class
/// subgraph plus a `k' x stacks` grid of sketch banks over it.
#[derive(Debug, Clone)]
pub struct CertStructure {
    cfg: CertificateConfig,
    seed: u64,
    class_graphs: Vec<DynGraph>,
    /// banks[color][j][ell]
    banks: Vec<Vec<Vec<SketchBank>>>,
}

impl CertStructure {
    pub fn new(g: &DynGraph, delta0: usize, tau_const: f64, seed: u64) -> Self {
        let cfg = CertificateConfig::new(g.n(), delta0, tau_const);
        let mut class_graphs = vec![DynGraph::new(g.n()); cfg.colors];
        for (u, v) in g.edges() {
            class_graphs[color_of(u, v, 0, seed, cfg.colors)]
                .insert_edge(u, v)
                .expect("edges of a simple graph");
        }
        let banks = (0..cfg.colors)
            .map(|i| {
                (0..cfg.k_prime)
                    .map(|j| {
                        (0..cfg.stacks)
                            .map(|l| {
                                let label = ((i * cfg.k_prime + j) * cfg.stacks + l) as u64;
                                let t = SketchTransform::new(subseed(seed, "bank", label), g.n());
                                SketchBank::init(t, &class_graphs[i])
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        CertStructure { cfg, seed, class_graphs, banks }
    }

    pub fn config(&self) -> &CertificateConfig {
        &self.cfg
    }

    /// Mirror a graph update; touches only the owning color's banks.
    pub fn update(&mut self, u: usize, v: usize, inserted: bool) -> Result<()> {
        let i = color_of(u, v, 0, self.seed, self.cfg.colors);
        if inserted {
            self.class_graphs[i].insert_edge(u, v)?;
        } else {
            self.class_graphs[i].delete_edge(u, v)?;
        }
        for grid in &mut self.banks[i] {
            for bank in grid {
                bank.update(u, v, inserted);
            }
        }
        Ok(())
    }

    /// Extract a delta_0-certificate of G' = G/F from sketches alone.
    ///
    /// Works on copies of the banks; per color, round j grows a forest
    /// F_j over the components of `forest` and subtracts its edges from
    /// the copies feeding rounds j' > j.
    pub fn query_sketch(&self, forest: &ComponentForest) -> Result<Certificate> {
        let mut edges = Vec::new();
        for i in 0..self.cfg.colors {
            edges.extend(self.query_color_sketch(i, forest)?);
        }
        Ok(self.assemble(forest, edges))
    }

    fn query_color_sketch(&self, i: usize, forest: &ComponentForest) -> Result<Vec<(usize, usize)>> {
        let mut copies = self.banks[i].clone();
        let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut out = Vec::new();
        for j in 0..self.cfg.k_prime {
            let class = &self.class_graphs[i];
            let used_ref = &used;
            let validate = move |u: usize, v: usize| {
                class.has_edge(u, v) && !used_ref.contains(&(u.min(v), u.max(v)))
            };
            let (_, fj) = boruvka_extend(forest.clone(), &copies[j], &validate)?;
            if fj.is_empty() {
                break;
            }
            for &(u, v) in &fj {
                used.insert((u.min(v), u.max(v)));
                out.push((u, v));
                for grid in copies.iter_mut().skip(j + 1) {
                    for bank in grid {
                        bank.update(u, v, false);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Correctness-preserving slow path: materialize each color's
    /// quotient explicitly and run Algorithm 1 on it.
    pub fn query_explicit(&self, forest: &ComponentForest) -> Result<Certificate> {
        let cmap = contraction_of(forest);
        let mut edges = Vec::new();
        for class in &self.class_graphs {
            let quotient = class.quotient(&cmap)?;
            edges.extend(seq_certificate(&quotient, self.cfg.k_prime).edges);
        }
        Ok(Certificate { vertices: forest.component_ids(), edges })
    }

    /// Sketch path with automatic fallback to the explicit path.
    pub fn query(&self, forest: &ComponentForest) -> Result<Certificate> {
        match self.query_sketch(forest) {
            Ok(cert) => Ok(cert),
            Err(Error::SketchFailure) => self.query_explicit(forest),
            Err(e) => Err(e),
        }
    }

    fn assemble(&self, forest: &ComponentForest, g_edges: Vec<(usize, usize)>) -> Certificate {
        let edges = g_edges
            .into_iter()
            .map(|(u, v)| CertEdge {
                a: forest.component_of(u),
                b: forest.component_of(v),
                orig: Some((u.min(v), u.max(v))),
            })
            .collect();
        Certificate { vertices: forest.component_ids(), edges }
    }
}

/// The contraction whose clusters are the forest's components.
pub fn contraction_of(forest: &ComponentForest) -> ContractionMap {
    let groups: Vec<BTreeSet<usize>> = forest
        .component_ids()
        .into_iter()
        .map(|c| forest.members(c).expect("live component").clone())
        .collect();
    ContractionMap::from_groups(forest.n(), &groups).expect("components partition V")
}
