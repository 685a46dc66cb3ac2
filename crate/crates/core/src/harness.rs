//! Stream replay, workload generation, and oracle cross-checking.
//!
//! A stream is a validated sequence of insert/delete/query events over a
//! fixed vertex count, replayable from the empty graph. `run` feeds a
//! stream through one of the engines (or the oracle itself), optionally
//! checking every update against Stoer–Wagner, and yields one CSV row
//! per event. Generated workloads always place a query after every
//! update so exactness failures surface at the earliest event.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::det_engine::{DetEngine, DetEngineConfig};
use crate::error::{Error, Result};
use crate::graph::{DynGraph, MultiGraph};
use crate::oracle::stoer_wagner;
use crate::rand_engine::{RandEngine, RandEngineConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateEvent {
    Insert(usize, usize),
    Delete(usize, usize),
    Query,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stream {
    pub n: usize,
    pub events: Vec<UpdateEvent>,
}

impl Stream {
    pub fn num_updates(&self) -> usize {
        self.events.iter().filter(|e| !matches!(e, UpdateEvent::Query)).count()
    }

    pub fn render(&self) -> String {
        let mut out = format!("# n {}\n", self.n);
        for ev in &self.events {
            match ev {
                UpdateEvent::Insert(u, v) => writeln!(out, "i {u} {v}").unwrap(),
                UpdateEvent::Delete(u, v) => writeln!(out, "d {u} {v}").unwrap(),
                UpdateEvent::Query => out.push_str("q\n"),
            }
        }
        out
    }
}

/// Parse and validate a stream file. Replaying the result from an empty
/// graph can never violate graph preconditions: self-loops, duplicate
/// inserts, deletes of absent edges, and out-of-range endpoints are all
/// rejected here with their line number.
pub fn parse_stream(text: &str) -> Result<Stream> {
    let mut n: Option<usize> = None;
    let mut events = Vec::new();
    let mut present: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse(lineno, msg);
        if let Some(rest) = line.strip_prefix('#') {
            let mut toks = rest.split_whitespace();
            if n.is_none() && toks.next() == Some("n") {
                let val = toks
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| err("malformed header, expected `# n <N>`".into()))?;
                if val == 0 {
                    return Err(err("vertex count must be positive".into()));
                }
                n = Some(val);
            }
            continue; // other comments ignored
        }
        let n = n.ok_or_else(|| err("event before `# n <N>` header".into()))?;
        let mut toks = line.split_whitespace();
        let kind = toks.next().unwrap();
        let mut endpoint = || {
            toks.next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(lineno, "expected a vertex id".into()))
        };
        match kind {
            "q" => events.push(UpdateEvent::Query),
            "i" | "d" => {
                let u = endpoint()?;
                let v = endpoint()?;
                if u == v {
                    return Err(err(format!("self-loop on vertex {u}")));
                }
                if u >= n || v >= n {
                    return Err(err(format!("vertex out of range for n = {n}")));
                }
                let key = (u.min(v), u.max(v));
                if kind == "i" {
                    if !present.insert(key) {
                        return Err(err(format!("duplicate insert of edge ({u}, {v})")));
                    }
                    events.push(UpdateEvent::Insert(u, v));
                } else {
                    if !present.remove(&key) {
                        return Err(err(format!("delete of absent edge ({u}, {v})")));
                    }
                    events.push(UpdateEvent::Delete(u, v));
                }
            }
            other => return Err(err(format!("unknown event kind {other:?}"))),
        }
        if let Some(extra) = toks.next() {
            return Err(Error::Parse(lineno, format!("trailing token {extra:?}")));
        }
    }
    let n = n.ok_or_else(|| Error::Parse(1, "missing `# n <N>` header".into()))?;
    Ok(Stream { n, events })
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn circulant_edges(n: usize, dists: &[usize]) -> Vec<(usize, usize)> {
    let mut edges = BTreeSet::new();
    for &d in dists {
        if d == 0 || d >= n {
            continue;
        }
        for i in 0..n {
            let j = (i + d) % n;
            if i != j {
                edges.insert((i.min(j), i.max(j)));
            }
        }
    }
    edges.into_iter().collect()
}

struct StreamBuilder {
    n: usize,
    events: Vec<UpdateEvent>,
    present: BTreeSet<(usize, usize)>,
    updates: usize,
    budget: usize,
}

impl StreamBuilder {
    fn new(n: usize, budget: usize) -> Self {
        StreamBuilder { n, events: Vec::new(), present: BTreeSet::new(), updates: 0, budget }
    }

    fn full(&self) -> bool {
        self.updates >= self.budget
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.present.contains(&(u.min(v), u.max(v)))
    }

    /// push one update plus its trailing query; false once the budget is
    /// spent or the event would be illegal
    fn toggle(&mut self, u: usize, v: usize, insert: bool) -> bool {
        if self.full() || u == v || self.has(u, v) == insert {
            return false;
        }
        let key = (u.min(v), u.max(v));
        if insert {
            self.present.insert(key);
            self.events.push(UpdateEvent::Insert(key.0, key.1));
        } else {
            self.present.remove(&key);
            self.events.push(UpdateEvent::Delete(key.0, key.1));
        }
        self.events.push(UpdateEvent::Query);
        self.updates += 1;
        true
    }

    fn finish(self) -> Stream {
        Stream { n: self.n, events: self.events }
    }
}

/// Generate a validated workload of exactly `steps` updates, each
/// followed by a query.
pub fn generate(workload: &str, n: usize, steps: usize, seed: u64) -> Result<Stream> {
    if n < 2 {
        return Err(Error::TooSmall);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = StreamBuilder::new(n, steps);
    match workload {
        // uniformly random edge toggles
        "random" => {
            while !b.full() {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                if u == v {
                    continue;
                }
                let insert = !b.has(u, v);
                b.toggle(u, v, insert);
            }
        }
        // two cliques joined by three bridges; churn stays inside the
        // cliques so the planted non-singleton cut remains verifiable
        "planted-cut" => {
            let half = n / 2;
            if half < 2 {
                return Err(Error::TooSmall);
            }
            let mut intra: Vec<(usize, usize)> = all_pairs(n)
                .into_iter()
                .filter(|&(u, v)| (u < half) == (v < half))
                .collect();
            for &(u, v) in &intra {
                b.toggle(u, v, true);
            }
            for k in 0..3.min(half) {
                b.toggle(k, half + k, true);
            }
            while !b.full() {
                intra.shuffle(&mut rng);
                let &(u, v) = intra.first().unwrap();
                let insert = !b.has(u, v);
                b.toggle(u, v, insert);
            }
        }
        // circulant C_n(1,2) has lambda = 4; removing and restoring
        // distance-2 chords oscillates lambda across the default tau
        "tau-oscillate" => {
            for (u, v) in circulant_edges(n, &[1, 2]) {
                b.toggle(u, v, true);
            }
            let mut t = 0usize;
            while !b.full() {
                let u = t % n;
                let v = (u + 2) % n;
                if b.has(u, v) {
                    b.toggle(u, v, false);
                    b.toggle(u, v, true);
                } else {
                    b.toggle(u, v, true);
                }
                t += 1;
            }
        }
        // dense start, then deletions dominate four to one
        "delete-heavy" => {
            for (u, v) in circulant_edges(n, &[1, 2, 3]) {
                b.toggle(u, v, true);
            }
            let mut removed: Vec<(usize, usize)> = Vec::new();
            while !b.full() {
                let reinsert = !removed.is_empty() && rng.gen_bool(0.2);
                if reinsert {
                    let k = rng.gen_range(0..removed.len());
                    let (u, v) = removed.swap_remove(k);
                    b.toggle(u, v, true);
                } else {
                    let live: Vec<(usize, usize)> = b.present.iter().copied().collect();
                    if live.is_empty() {
                        for (u, v) in circulant_edges(n, &[1, 2, 3]) {
                            if b.full() {
                                break;
                            }
                            b.toggle(u, v, true);
                        }
                        continue;
                    }
                    let (u, v) = live[rng.gen_range(0..live.len())];
                    b.toggle(u, v, false);
                    removed.push((u, v));
                }
            }
        }
        other => return Err(Error::UnknownWorkload(other.to_string())),
    }
    Ok(b.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineKind {
    Rand,
    Det,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    /// evaluate the oracle after every update and compare
    pub check: bool,
    pub seed: u64,
    /// rand engine: repetitions per degree range
    pub t_reps: Option<usize>,
    /// rand engine: certificate color constant; det engine: fixed tau
    pub tau_const: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { check: true, seed: 0, t_reps: None, tau_const: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventRow {
    pub event_idx: usize,
    pub kind: char,
    pub u: Option<usize>,
    pub v: Option<usize>,
    pub answer: Option<usize>,
    pub oracle: Option<usize>,
    pub matched: Option<bool>,
    /// engine work counter delta for this event
    pub work_units: u64,
    pub micros: u128,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub rows: Vec<EventRow>,
    pub mismatches: usize,
    pub total_work: u64,
    pub max_micros: u128,
    pub mean_micros: f64,
}

pub const CSV_HEADER: &str = "event_idx,kind,u,v,answer,oracle,match,work_units,micros";

impl RunReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        let cell = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.rows {
            let matched = r.matched.map(|m| if m { "1" } else { "0" }).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                r.event_idx,
                r.kind,
                cell(r.u),
                cell(r.v),
                cell(r.answer),
                cell(r.oracle),
                matched,
                r.work_units,
                r.micros
            )
            .unwrap();
        }
        out
    }
}

enum Runner {
    Rand(RandEngine),
    Det(DetEngine),
    Oracle(DynGraph),
}

impl Runner {
    fn update(&mut self, u: usize, v: usize, inserted: bool) -> Result<()> {
        match self {
            Runner::Rand(e) => e.update(u, v, inserted),
            Runner::Det(e) => e.update(u, v, inserted),
            Runner::Oracle(g) => {
                if inserted {
                    g.insert_edge(u, v)?;
                } else {
                    g.delete_edge(u, v)?;
                }
                Ok(())
            }
        }
    }

    fn query(&mut self) -> Result<usize> {
        match self {
            Runner::Rand(e) => Ok(e.query()?.lambda),
            Runner::Det(e) => Ok(e.query()?.lambda),
            Runner::Oracle(g) => Ok(oracle_lambda(g)),
        }
    }

    fn work_units(&self) -> u64 {
        match self {
            Runner::Rand(e) => e.work_units(),
            Runner::Det(e) => e.work_units(),
            Runner::Oracle(g) => g.edges().count() as u64,
        }
    }
}

fn oracle_lambda(g: &DynGraph) -> usize {
    if g.n() < 2 || g.components().len() > 1 {
        return 0;
    }
    stoer_wagner(&MultiGraph::from_graph(g)).expect("n >= 2").value
}

/// Replay `stream` through the chosen engine. With `check`, the oracle
/// is evaluated after every update as well as at explicit queries, and
/// any disagreement counts as a mismatch on that row.
pub fn run(kind: EngineKind, stream: &Stream, cfg: RunConfig) -> Result<RunReport> {
    let g = DynGraph::new(stream.n);
    let mut shadow = g.clone();
    let mut engine = match kind {
        EngineKind::Rand => Runner::Rand(RandEngine::new(
            g,
            RandEngineConfig {
                t_reps: cfg.t_reps.unwrap_or(8),
                tau_const: cfg.tau_const.unwrap_or(1.0),
                seed: cfg.seed,
            },
        )),
        EngineKind::Det => {
            let det_cfg = match cfg.tau_const {
                Some(c) => DetEngineConfig::with_tau((c.round() as usize).max(1)),
                None => DetEngineConfig::with_tau(3),
            };
            Runner::Det(DetEngine::new(g, det_cfg))
        }
        EngineKind::Oracle => Runner::Oracle(g),
    };
    let mut rows = Vec::with_capacity(stream.events.len());
    let mut mismatches = 0usize;
    let mut last_work = 0u64;
    for (event_idx, &ev) in stream.events.iter().enumerate() {
        let wrap = |e: Error| Error::Engine(event_idx, e.to_string());
        let start = Instant::now();
        let (kind_ch, u, v, answer) = match ev {
            UpdateEvent::Insert(u, v) | UpdateEvent::Delete(u, v) => {
                let inserted = matches!(ev, UpdateEvent::Insert(..));
                engine.update(u, v, inserted).map_err(wrap)?;
                if inserted {
                    shadow.insert_edge(u, v).map_err(wrap)?;
                } else {
                    shadow.delete_edge(u, v).map_err(wrap)?;
                }
                // per-update checking queries the engine even without an
                // explicit q event, so corruption surfaces immediately
                let answer =
                    if cfg.check { Some(engine.query().map_err(wrap)?) } else { None };
                (if inserted { 'i' } else { 'd' }, Some(u), Some(v), answer)
            }
            UpdateEvent::Query => ('q', None, None, Some(engine.query().map_err(wrap)?)),
        };
        let (oracle, matched) = match (cfg.check, answer) {
            (true, Some(a)) => {
                let o = oracle_lambda(&shadow);
                if a != o {
                    mismatches += 1;
                }
                (Some(o), Some(a == o))
            }
            _ => (None, None),
        };
        let micros = start.elapsed().as_micros();
        let work = engine.work_units();
        rows.push(EventRow {
            event_idx,
            kind: kind_ch,
            u,
            v,
            answer,
            oracle,
            matched,
            work_units: work.saturating_sub(last_work),
            micros,
        });
        last_work = work;
    }
    let total_work = engine.work_units();
    let max_micros = rows.iter().map(|r| r.micros).max().unwrap_or(0);
    let mean_micros = if rows.is_empty() {
        0.0
    } else {
        rows.iter().map(|r| r.micros as f64).sum::<f64>() / rows.len() as f64
    };
    Ok(RunReport { rows, mismatches, total_work, max_micros, mean_micros })
}
