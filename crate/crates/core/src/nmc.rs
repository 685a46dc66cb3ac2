//! Non-singleton-minimum-cut (NMC) sparsifiers.
//!
//! Starting from a phi-expander decomposition, each cluster is trimmed
//! (iteratively drop vertices keeping less than 2/5 of their degree
//! inside) and then shaved (keep vertices with at least half their
//! degree plus one inside); contracting every shaved core yields a
//! multigraph that preserves the value of every non-singleton minimum
//! cut, so `min(delta, lambda(H))` recovers lambda exactly. The
//! decremental state keeps the trim/shave sets consistent under
//! deletions by cascading removals, and the fully dynamic wrapper holds
//! insertions in a side buffer I between phase rebuilds, exporting
//! `H' = H union I`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::Result;
use crate::expander::{DecOutcome, ExpanderPartition, Ratio};
use crate::graph::{ContractionMap, DynGraph, MultiGraph};

/// Iterated 2/5-degree peel; the fixed point is order-independent.
pub fn trim(g: &DynGraph, u: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut kept: BTreeSet<usize> = u.clone();
    let mut deg_in: BTreeMap<usize, usize> = kept
        .iter()
        .map(|&v| (v, g.neighbors(v).filter(|x| kept.contains(x)).count()))
        .collect();
    let mut queue: VecDeque<usize> = kept.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        if !kept.contains(&v) {
            continue;
        }
        if 5 * deg_in[&v] < 2 * g.degree(v) {
            kept.remove(&v);
            for x in g.neighbors(v) {
                if kept.contains(&x) {
                    *deg_in.get_mut(&x).expect("kept vertex") -= 1;
                    queue.push_back(x);
                }
            }
        }
    }
    kept
}

/// One-shot strict d/2 + 1 filter against the given set (no recursion).
pub fn shave(g: &DynGraph, u_prime: &BTreeSet<usize>) -> BTreeSet<usize> {
    u_prime
        .iter()
        .copied()
        .filter(|&v| {
            let deg_in = g.neighbors(v).filter(|x| u_prime.contains(x)).count();
            2 * deg_in > g.degree(v) + 2
        })
        .collect()
}

/// Trim/shave bookkeeping for one phase-start cluster.
#[derive(Debug, Clone)]
struct TrimShave {
    u_prime: BTreeSet<usize>,
    u_double: BTreeSet<usize>,
    /// deg within u_prime, for members of u_prime only
    deg_in: BTreeMap<usize, usize>,
}

impl TrimShave {
    fn build(g: &DynGraph, u: &BTreeSet<usize>) -> Self {
        let u_prime = trim(g, u);
        let u_double = shave(g, &u_prime);
        let deg_in = u_prime
            .iter()
            .map(|&v| (v, g.neighbors(v).filter(|x| u_prime.contains(x)).count()))
            .collect();
        TrimShave { u_prime, u_double, deg_in }
    }
}

/// The decremental NMC sparsifier plus the fully dynamic phase wrapper.
#[derive(Debug, Clone)]
pub struct SparsifierState {
    phi: Ratio,
    /// the real current graph, all updates applied
    g: DynGraph,
    /// decremental expander decomposition over the phase graph
    dec: ExpanderPartition,
    /// phase-start cluster index per vertex
    cluster_idx: Vec<Option<usize>>,
    shaves: Vec<TrimShave>,
    /// insertion buffer I: edges inserted this phase and still alive
    buffer: BTreeSet<(usize, usize)>,
    phase_len: usize,
    phase_updates: usize,
}

impl SparsifierState {
    pub fn build(g: &DynGraph, phi: Ratio) -> Self {
        let dec = ExpanderPartition::decompose(g, phi);
        let mut cluster_idx = vec![None; g.n()];
        let mut shaves = Vec::new();
        for (_, info) in dec.clusters() {
            if info.members.len() < 2 {
                continue;
            }
            let idx = shaves.len();
            for &v in &info.members {
                cluster_idx[v] = Some(idx);
            }
            shaves.push(TrimShave::build(g, &info.members));
        }
        let phase_len =
            (((phi.num as u128).pow(2) * g.m() as u128) / (phi.den as u128).pow(2)).max(1) as usize;
        SparsifierState {
            phi,
            g: g.clone(),
            dec,
            cluster_idx,
            shaves,
            buffer: BTreeSet::new(),
            phase_len,
            phase_updates: 0,
        }
    }

    pub fn graph(&self) -> &DynGraph {
        &self.g
    }

    pub fn phase_len(&self) -> usize {
        self.phase_len
    }

    pub fn phase_updates(&self) -> usize {
        self.phase_updates
    }

    pub fn buffer_len(&self) -> usize {
        self.buffer.len()
    }

    /// One fully dynamic update; rebuilds everything at phase end.
    pub fn fd_update(&mut self, u: usize, v: usize, inserted: bool) -> Result<()> {
        let key = (u.min(v), u.max(v));
        if inserted {
            self.g.insert_edge(u, v)?;
            self.buffer.insert(key);
        } else {
            self.g.delete_edge(u, v)?;
            if !self.buffer.remove(&key) {
                self.dec_delete(u, v)?;
            }
        }
        self.phase_updates += 1;
        if self.phase_updates >= self.phase_len {
            *self = Self::build(&self.g.clone(), self.phi);
        }
        Ok(())
    }

    /// Deletion of a phase edge: pass to the decremental decomposition,
    /// then cascade Remove/Uncontract through the trim/shave sets.
    fn dec_delete(&mut self, u: usize, v: usize) -> Result<()> {
        let outcome = self.dec.dec_delete(u, v)?;
        let mut recheck: VecDeque<usize> = VecDeque::new();
        // the edge itself may drop in-cluster degrees
        if let (Some(ci), Some(cj)) = (self.cluster_idx[u], self.cluster_idx[v]) {
            if ci == cj {
                let ts = &mut self.shaves[ci];
                if ts.u_prime.contains(&u) && ts.u_prime.contains(&v) {
                    *ts.deg_in.get_mut(&u).expect("member") -= 1;
                    *ts.deg_in.get_mut(&v).expect("member") -= 1;
                }
            }
        }
        recheck.push_back(u);
        recheck.push_back(v);
        // expander-pruned or exploded vertices leave U' unconditionally
        if let DecOutcome::Intra(change) = &outcome {
            for &w in &change.pruned {
                self.remove_from_prime(w, &mut recheck);
            }
        }
        while let Some(w) = recheck.pop_front() {
            let Some(ci) = self.cluster_idx[w] else { continue };
            let ts = &self.shaves[ci];
            if !ts.u_prime.contains(&w) {
                continue;
            }
            let deg_in = ts.deg_in[&w];
            let d = self.dec.graph().degree(w);
            if 5 * deg_in < 2 * d {
                self.remove_from_prime(w, &mut recheck);
            } else if 2 * deg_in <= d + 2 {
                // invariant (2) broken: Uncontract w out of the core
                self.shaves[ci].u_double.remove(&w);
            }
        }
        Ok(())
    }

    fn remove_from_prime(&mut self, w: usize, recheck: &mut VecDeque<usize>) {
        let Some(ci) = self.cluster_idx[w] else { return };
        let ts = &mut self.shaves[ci];
        if !ts.u_prime.remove(&w) {
            return;
        }
        ts.u_double.remove(&w);
        ts.deg_in.remove(&w);
        let neighbors: Vec<usize> = self
            .dec
            .graph()
            .neighbors(w)
            .filter(|x| ts.u_prime.contains(x))
            .collect();
        for x in neighbors {
            *self.shaves[ci].deg_in.get_mut(&x).expect("member") -= 1;
            recheck.push_back(x);
        }
    }

    /// The contraction induced by the current shaved cores.
    pub fn contraction(&self) -> ContractionMap {
        let mut groups: Vec<BTreeSet<usize>> = self
            .shaves
            .iter()
            .filter(|ts| ts.u_double.len() >= 2)
            .map(|ts| ts.u_double.clone())
            .collect();
        let covered: BTreeSet<usize> = groups.iter().flatten().copied().collect();
        groups.extend((0..self.g.n()).filter(|v| !covered.contains(v)).map(|v| BTreeSet::from([v])));
        ContractionMap::from_groups(self.g.n(), &groups).expect("disjoint cores")
    }

    /// H' = H union I: quotient of the phase graph plus buffered edges.
    pub fn export(&self) -> MultiGraph {
        self.export_with_map().0
    }

    pub fn export_with_map(&self) -> (MultiGraph, ContractionMap) {
        let cmap = self.contraction();
        let mut h = self.dec.graph().quotient(&cmap).expect("matching map");
        for &(a, b) in &self.buffer {
            h.add_edge(cmap.cluster_of(a), cmap.cluster_of(b), 1);
        }
        (h, cmap)
    }

    #[cfg(test)]
    fn audit(&self) {
        let gd = self.dec.graph();
        for ts in &self.shaves {
            for &v in &ts.u_prime {
                let recount = gd.neighbors(v).filter(|x| ts.u_prime.contains(x)).count();
                assert_eq!(ts.deg_in[&v], recount, "stale deg_in at {v}");
                assert!(5 * recount >= 2 * gd.degree(v), "invariant (1) broken at {v}");
            }
            for &v in &ts.u_double {
                assert!(ts.u_prime.contains(&v));
                assert!(2 * ts.deg_in[&v] > gd.degree(v) + 2, "invariant (2) broken at {v}");
            }
            assert_eq!(trim(gd, &ts.u_prime), ts.u_prime, "U' is not a trim fixed point");
        }
    }
}
