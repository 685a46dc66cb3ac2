//! Exact static min-cut oracles.
//!
//! These are the query substrate of both engines and the referee for every
//! test: deterministic Stoer–Wagner over multigraphs, brute-force cut
//! enumeration for small n, and a capped variant backing the default
//! small-cut engine.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;

/// A global minimum cut: its weight and one side achieving it (original
/// vertex ids).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub value: usize,
    pub side: BTreeSet<usize>,
}

/// Result of [`capped_mincut`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CappedCut {
    Exact(CutResult),
    AboveCap,
}

fn multigraph_components(g: &MultiGraph) -> Vec<BTreeSet<usize>> {
    let verts: Vec<usize> = g.vertices().to_vec();
    let mut comp_of: std::collections::BTreeMap<usize, usize> = verts.iter().map(|&v| (v, v)).collect();
    // union-find over ids
    fn find(c: &mut std::collections::BTreeMap<usize, usize>, v: usize) -> usize {
        let p = c[&v];
        if p == v {
            v
        } else {
            let r = find(c, p);
            c.insert(v, r);
            r
        }
    }
    for ((a, b), _) in g.edge_pairs() {
        let (ra, rb) = (find(&mut comp_of, a), find(&mut comp_of, b));
        if ra != rb {
            comp_of.insert(ra, rb);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, BTreeSet<usize>> = Default::default();
    for &v in &verts {
        let r = find(&mut comp_of, v);
        groups.entry(r).or_default().insert(v);
    }
    groups.into_values().collect()
}

/// Deterministic Stoer–Wagner global min cut on a multigraph.
///
/// Returns value 0 with one component as the side when disconnected.
pub fn stoer_wagner(g: &MultiGraph) -> Result<CutResult> {
    let verts: Vec<usize> = g.vertices().to_vec();
    let n = verts.len();
    if n < 2 {
        return Err(Error::TooSmall);
    }
    let comps = multigraph_components(g);
    if comps.len() > 1 {
        return Ok(CutResult { value: 0, side: comps[0].clone() });
    }

    // dense weight matrix over live super-vertices
    let mut w = vec![vec![0usize; n]; n];
    let index: std::collections::BTreeMap<usize, usize> =
        verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for ((a, b), mult) in g.edge_pairs() {
        let (ia, ib) = (index[&a], index[&b]);
        w[ia][ib] += mult;
        w[ib][ia] += mult;
    }
    let mut groups: Vec<BTreeSet<usize>> = verts.iter().map(|&v| BTreeSet::from([v])).collect();
    let mut live: Vec<usize> = (0..n).collect();
    let mut best: Option<CutResult> = None;

    while live.len() > 1 {
        // maximum adjacency order starting from live[0]
        let mut order = vec![live[0]];
        let mut in_a = vec![false; n];
        in_a[live[0]] = true;
        let mut conn: Vec<usize> = vec![0; n];
        for &v in &live {
            conn[v] = w[live[0]][v];
        }
        while order.len() < live.len() {
            let &next = live
                .iter()
                .filter(|&&v| !in_a[v])
                .max_by_key(|&&v| (conn[v], std::cmp::Reverse(v)))
                .unwrap();
            in_a[next] = true;
            order.push(next);
            for &v in &live {
                if !in_a[v] {
                    conn[v] += w[next][v];
                }
            }
        }
        let t = *order.last().unwrap();
        let s = order[order.len() - 2];
        let cut_of_phase = conn[t];
        let candidate = CutResult { value: cut_of_phase, side: groups[t].clone() };
        if best.as_ref().is_none_or(|b| candidate.value < b.value) {
            best = Some(candidate);
        }
        // merge t into s
        let gt = std::mem::take(&mut groups[t]);
        groups[s].extend(gt);
        for &v in &live {
            if v != s && v != t {
                w[s][v] += w[t][v];
                w[v][s] = w[s][v];
            }
        }
        live.retain(|&v| v != t);
    }
    Ok(best.unwrap())
}

/// Exact minimum over all bipartitions, optionally restricted to cuts with
/// both sides of size >= 2. Capped at n <= 16.
pub fn brute_force_mincut(g: &MultiGraph, nonsingleton_only: bool) -> Result<CutResult> {
    let verts: Vec<usize> = g.vertices().to_vec();
    let n = verts.len();
    if n < 2 {
        return Err(Error::TooSmall);
    }
    if n > 16 {
        return Err(Error::TooLarge(n, 16));
    }
    let mut best: Option<CutResult> = None;
    // fix verts[0] on the complement side so each bipartition appears once
    for mask in 1u32..(1 << (n - 1)) {
        let side: BTreeSet<usize> =
            (0..n - 1).filter(|i| mask >> i & 1 == 1).map(|i| verts[i + 1]).collect();
        if nonsingleton_only && (side.len() < 2 || n - side.len() < 2) {
            continue;
        }
        let value = g.cut_size(&side);
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(CutResult { value, side });
        }
    }
    best.ok_or(Error::TooSmall)
}

/// Exact connectivity when it is at most `cap`, otherwise `AboveCap`.
pub fn capped_mincut(g: &MultiGraph, cap: usize) -> Result<CappedCut> {
    if g.num_vertices() < 2 {
        return Err(Error::TooSmall);
    }
    let comps = multigraph_components(g);
    if comps.len() > 1 {
        return Ok(CappedCut::Exact(CutResult { value: 0, side: comps[0].clone() }));
    }
    if cap == 0 {
        return Ok(CappedCut::AboveCap);
    }
    let full = stoer_wagner(g)?;
    if full.value <= cap {
        Ok(CappedCut::Exact(full))
    } else {
        Ok(CappedCut::AboveCap)
    }
}
