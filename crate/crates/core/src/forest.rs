//! Spanning forests over sketched graphs.
//!
//! [`ComponentForest`] tracks a forest together with the partition of
//! vertices into components it induces, and can aggregate the sketch rows
//! of a component on demand. Summing the signed incidence rows of a
//! component cancels its internal edges, so the aggregate is a sketch of
//! the component's boundary: decoding it yields an outgoing edge. That is
//! exactly what [`boruvka_forest`] does, round by round, to build a
//! spanning forest of a graph it can only see through sketches.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::sketch::{edge_from_index, Decoded, Sketch, SketchBank};

/// A forest on `{0, .., n-1}` with explicit component bookkeeping.
#[derive(Debug, Clone)]
pub struct ComponentForest {
    comp_of: Vec<usize>,
    members: BTreeMap<usize, BTreeSet<usize>>,
    adj: Vec<BTreeSet<usize>>,
    next_id: usize,
}

impl ComponentForest {
    /// The edgeless forest: every vertex is its own component.
    pub fn new(n: usize) -> Self {
        ComponentForest {
            comp_of: (0..n).collect(),
            members: (0..n).map(|v| (v, BTreeSet::from([v]))).collect(),
            adj: vec![BTreeSet::new(); n],
            next_id: n,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.comp_of[v]
    }

    pub fn same_component(&self, u: usize, v: usize) -> bool {
        self.comp_of[u] == self.comp_of[v]
    }

    pub fn num_components(&self) -> usize {
        self.members.len()
    }

    /// Component ids, in ascending order.
    pub fn component_ids(&self) -> Vec<usize> {
        self.members.keys().copied().collect()
    }

    pub fn members(&self, comp: usize) -> Result<&BTreeSet<usize>> {
        self.members.get(&comp).ok_or(Error::UnknownComponent(comp))
    }

    /// Forest edges in canonical `(min, max)` order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb.range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].contains(&v)
    }

    /// Add a forest edge, merging the two components.
    pub fn link(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if u >= self.adj.len() || v >= self.adj.len() {
            return Err(Error::UnknownVertex(u.max(v), self.adj.len()));
        }
        if self.comp_of[u] == self.comp_of[v] {
            return Err(Error::WouldCreateCycle(u, v));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        // absorb the smaller component into the larger one
        let (mut keep, mut gone) = (self.comp_of[u], self.comp_of[v]);
        if self.members[&keep].len() < self.members[&gone].len() {
            std::mem::swap(&mut keep, &mut gone);
        }
        let moved = self.members.remove(&gone).expect("component exists");
        for &w in &moved {
            self.comp_of[w] = keep;
        }
        self.members.get_mut(&keep).expect("component exists").extend(moved);
        Ok(())
    }

    /// Remove a forest edge, splitting its component in two.
    pub fn cut(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.adj.len() || v >= self.adj.len() {
            return Err(Error::UnknownVertex(u.max(v), self.adj.len()));
        }
        if !self.adj[u].contains(&v) {
            return Err(Error::NotForestEdge(u, v));
        }
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        // one side keeps the old id; the side reachable from v moves out
        let side = self.reachable(v);
        let (old, moved) = if side.len() * 2 <= self.members[&self.comp_of[u]].len() {
            (self.comp_of[u], side)
        } else {
            (self.comp_of[u], self.reachable(u))
        };
        let fresh = self.next_id;
        self.next_id += 1;
        let keep = self.members.get_mut(&old).expect("component exists");
        for &w in &moved {
            keep.remove(&w);
        }
        for &w in &moved {
            self.comp_of[w] = fresh;
        }
        self.members.insert(fresh, moved);
        Ok(())
    }

    fn reachable(&self, start: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            for &x in &self.adj[w] {
                if seen.insert(x) {
                    queue.push_back(x);
                }
            }
        }
        seen
    }

    /// Sum of the bank's rows over a component: a sketch of its boundary.
    pub fn component_sketch(&self, bank: &SketchBank, comp: usize) -> Result<Sketch> {
        let members = self.members(comp)?;
        let mut acc = Sketch::zero(&bank.transform);
        for &v in members {
            acc.add_assign(bank.row(v))?;
        }
        Ok(acc)
    }
}

/// Build a spanning forest of the graph underlying `stacks` by Boruvka
/// rounds, validating every decoded edge with `validate` before linking.
///
/// Each round consumes one bank (all banks must describe the same edge
/// set under independent transforms); reusing a bank within a round is
/// fine because components only merge. Returns the forest once every
/// component's boundary sketch decodes to `Empty`. A decoded edge the
/// validator rejects, or rounds running out while boundaries remain, is
/// a [`Error::SketchFailure`].
pub fn boruvka_forest(
    n: usize,
    stacks: &[SketchBank],
    validate: &dyn Fn(usize, usize) -> bool,
) -> Result<ComponentForest> {
    boruvka_extend(ComponentForest::new(n), stacks, validate).map(|(f, _)| f)
}

/// Like [`boruvka_forest`], but grows on top of `forest`'s existing
/// components and also returns the edges it linked, in link order.
pub fn boruvka_extend(
    mut forest: ComponentForest,
    stacks: &[SketchBank],
    validate: &dyn Fn(usize, usize) -> bool,
) -> Result<(ComponentForest, Vec<(usize, usize)>)> {
    let n = forest.n();
    let mut linked = Vec::new();
    for bank in stacks {
        let mut links: Vec<(usize, usize)> = Vec::new();
        let mut done = true;
        for comp in forest.component_ids() {
            let agg = forest.component_sketch(bank, comp)?;
            match agg.decode(&bank.transform) {
                Decoded::Empty => {}
                Decoded::NonZero { index, .. } => {
                    done = false;
                    let (u, v) = edge_from_index(n, index);
                    if !validate(u, v) {
                        return Err(Error::SketchFailure);
                    }
                    links.push((u, v));
                }
                Decoded::Fail => {
                    done = false;
                }
            }
        }
        if done {
            return Ok((forest, linked));
        }
        for (u, v) in links {
            if !forest.same_component(u, v) {
                forest.link(u, v)?;
                linked.push((u, v));
            }
        }
    }
    // a final all-Empty check in case the last round finished the job
    if let Some(bank) = stacks.last() {
        let all_empty = forest.component_ids().iter().all(|&c| {
            matches!(
                forest
                    .component_sketch(bank, c)
                    .map(|s| s.decode(&bank.transform)),
                Ok(Decoded::Empty)
            )
        });
        if all_empty {
            return Ok((forest, linked));
        }
    }
    Err(Error::SketchFailure)
}
