//! Linear l0-sampling sketches over signed edge-indexed vectors.
//!
//! A transform is a seeded family of level hashes plus per-level
//! fingerprints; it is never materialized as a matrix. Sketches are linear:
//! adding two sketches yields the sketch of the summed vectors, which is
//! what lets per-component sums expose only cut-crossing edges.
//!
//! Edge coordinates use the triangular bijection over pairs `(u, v)` with
//! `u < v`, so the coordinate space has dimension exactly `n(n-1)/2`. Row
//! `u` of the signed incidence matrix carries `+1` for edges where `u` is
//! the smaller endpoint and `-1` where it is the larger.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::DynGraph;
use crate::rng::subseed;

/// 2^61 - 1; comfortably above N^2 for any desk-scale n.
pub const FIELD_PRIME: u64 = (1 << 61) - 1;

/// Number of independent level-stacks per sketch. Raising this lowers the
/// per-decode failure rate at a linear cost in size.
pub const DEFAULT_REPS: usize = 3;

/// Coordinate of edge (u, v) in the triangular layout, u < v required.
pub fn edge_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// Inverse of [`edge_index`].
pub fn edge_from_index(n: usize, mut idx: usize) -> (usize, usize) {
    for u in 0..n {
        let row = n - u - 1;
        if idx < row {
            return (u, u + idx + 1);
        }
        idx -= row;
    }
    panic!("edge index out of range");
}

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % FIELD_PRIME as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= FIELD_PRIME;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base);
        }
        base = mulmod(base, base);
        exp >>= 1;
    }
    acc
}

/// Seeded representation of one linear sketching transform.
#[derive(Debug, Clone)]
pub struct SketchTransform {
    pub seed: u64,
    pub n: usize,
    /// dimension of the edge-coordinate space, n(n-1)/2
    pub num_coords: usize,
    pub levels: usize,
    pub reps: usize,
    uid: u64,
    hash_seeds: Vec<u64>,
    fingerprint_bases: Vec<u64>,
}

impl SketchTransform {
    pub fn new(seed: u64, n: usize) -> Arc<Self> {
        Self::with_reps(seed, n, DEFAULT_REPS)
    }

    pub fn with_reps(seed: u64, n: usize, reps: usize) -> Arc<Self> {
        assert!(n >= 2, "transform needs n >= 2");
        let num_coords = n * (n - 1) / 2;
        let levels = (usize::BITS - (num_coords.max(1) - 1).leading_zeros()) as usize + 1;
        let hash_seeds = (0..reps).map(|r| subseed(seed, "level-hash", r as u64)).collect();
        let fingerprint_bases = (0..reps)
            .map(|r| 2 + subseed(seed, "fingerprint", r as u64) % (FIELD_PRIME - 3))
            .collect();
        Arc::new(SketchTransform {
            seed,
            n,
            num_coords,
            levels,
            reps,
            uid: subseed(seed, "transform-uid", (n as u64) << 8 | reps as u64),
            hash_seeds,
            fingerprint_bases,
        })
    }

    pub fn uid(&self) -> u64 {
        self.uid
    }

    /// Deepest level the coordinate is sampled into for stack `rep`
    /// (level l contains the coordinate iff l <= depth).
    fn depth(&self, rep: usize, coord: usize) -> usize {
        let h = subseed(self.hash_seeds[rep], "", coord as u64);
        (h.trailing_zeros() as usize).min(self.levels - 1)
    }

    fn cell(&self, rep: usize, level: usize) -> usize {
        rep * self.levels + level
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Cell {
    count: i64,
    weighted: i64,
    fingerprint: u64,
}

impl Cell {
    fn is_zero(&self) -> bool {
        self.count == 0 && self.weighted == 0 && self.fingerprint == 0
    }
}

/// Outcome of decoding a sketch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decoded {
    /// The encoded vector is (almost surely) zero.
    Empty,
    /// A support coordinate and its (signed, nonzero) value.
    NonZero { index: usize, value: i64 },
    /// No level passed the one-sparse test; retry with a fresh transform.
    Fail,
}

/// l0-sampling sketch of one vector under a fixed transform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sketch {
    transform_id: u64,
    cells: Vec<Cell>,
}

impl Sketch {
    pub fn zero(t: &SketchTransform) -> Self {
        Sketch { transform_id: t.uid, cells: vec![Cell::default(); t.reps * t.levels] }
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(Cell::is_zero)
    }

    pub fn transform_id(&self) -> u64 {
        self.transform_id
    }

    /// Add `value` at `coord`.
    pub fn apply(&mut self, t: &SketchTransform, coord: usize, value: i64) {
        debug_assert_eq!(self.transform_id, t.uid);
        if value == 0 {
            return;
        }
        let vmod = value.rem_euclid(FIELD_PRIME as i64) as u64;
        for rep in 0..t.reps {
            let depth = t.depth(rep, coord);
            let fp = mulmod(vmod, powmod(t.fingerprint_bases[rep], coord as u64));
            for level in 0..=depth {
                let c = &mut self.cells[t.cell(rep, level)];
                c.count += value;
                c.weighted += value * coord as i64;
                c.fingerprint = (c.fingerprint + fp) % FIELD_PRIME;
            }
        }
    }

    pub fn add_assign(&mut self, other: &Sketch) -> Result<()> {
        self.combine(other, 1)
    }

    pub fn sub_assign(&mut self, other: &Sketch) -> Result<()> {
        self.combine(other, -1)
    }

    fn combine(&mut self, other: &Sketch, sign: i64) -> Result<()> {
        if self.transform_id != other.transform_id {
            return Err(Error::TransformMismatch);
        }
        for (a, b) in self.cells.iter_mut().zip(&other.cells) {
            a.count += sign * b.count;
            a.weighted += sign * b.weighted;
            a.fingerprint = if sign > 0 {
                (a.fingerprint + b.fingerprint) % FIELD_PRIME
            } else {
                (a.fingerprint + FIELD_PRIME - b.fingerprint) % FIELD_PRIME
            };
        }
        Ok(())
    }

    /// Recover one support coordinate, if any candidate cell is one-sparse.
    ///
    /// Candidates are the stored level cells (depth >= l) plus differences
    /// of adjacent levels (depth exactly l); the latter cost nothing to
    /// store and make one-sparse hits much more likely.
    pub fn decode(&self, t: &SketchTransform) -> Decoded {
        debug_assert_eq!(self.transform_id, t.uid);
        if self.is_zero() {
            return Decoded::Empty;
        }
        let check = |rep: usize, c: Cell, min_depth: usize, max_depth: usize| -> Option<(usize, i64)> {
            if c.count == 0 || c.weighted % c.count != 0 {
                return None;
            }
            let coord = c.weighted / c.count;
            if coord < 0 || coord as usize >= t.num_coords {
                return None;
            }
            let coord = coord as usize;
            let d = t.depth(rep, coord);
            if d < min_depth || d > max_depth {
                return None;
            }
            let vmod = c.count.rem_euclid(FIELD_PRIME as i64) as u64;
            (c.fingerprint == mulmod(vmod, powmod(t.fingerprint_bases[rep], coord as u64)))
                .then_some((coord, c.count))
        };
        for rep in 0..t.reps {
            // deeper levels are sparser; scan them first
            for level in (0..t.levels).rev() {
                let c = self.cells[t.cell(rep, level)];
                if let Some((index, value)) = check(rep, c, level, usize::MAX) {
                    return Decoded::NonZero { index, value };
                }
            }
            for level in 0..t.levels - 1 {
                let a = self.cells[t.cell(rep, level)];
                let b = self.cells[t.cell(rep, level + 1)];
                let diff = Cell {
                    count: a.count - b.count,
                    weighted: a.weighted - b.weighted,
                    fingerprint: (a.fingerprint + FIELD_PRIME - b.fingerprint) % FIELD_PRIME,
                };
                if let Some((index, value)) = check(rep, diff, level, level) {
                    return Decoded::NonZero { index, value };
                }
            }
        }
        Decoded::Fail
    }
}

/// Sketch the unit vector `value * e_coord`.
pub fn unit_sketch(t: &SketchTransform, coord: usize, value: i64) -> Result<Sketch> {
    if coord >= t.num_coords {
        return Err(Error::IndexOutOfRange(coord, t.num_coords));
    }
    let mut s = Sketch::zero(t);
    s.apply(t, coord, value);
    Ok(s)
}

/// Componentwise sum of two sketches of the same transform.
pub fn add(a: &Sketch, b: &Sketch) -> Result<Sketch> {
    let mut out = a.clone();
    out.add_assign(b)?;
    Ok(out)
}

/// Per-vertex sketches of the signed incidence rows of a graph.
#[derive(Debug, Clone)]
pub struct SketchBank {
    pub transform: Arc<SketchTransform>,
    rows: Vec<Sketch>,
}

impl SketchBank {
    /// Rows for the current edge set of `g`.
    pub fn init(transform: Arc<SketchTransform>, g: &DynGraph) -> Self {
        let mut rows = vec![Sketch::zero(&transform); g.n()];
        let mut bank = SketchBank { transform, rows: Vec::new() };
        for (u, v) in g.edges() {
            let coord = edge_index(bank.transform.n, u, v);
            rows[u].apply(&bank.transform, coord, 1);
            rows[v].apply(&bank.transform, coord, -1);
        }
        bank.rows = rows;
        bank
    }

    pub fn empty(transform: Arc<SketchTransform>, n: usize) -> Self {
        let rows = vec![Sketch::zero(&transform); n];
        SketchBank { transform, rows }
    }

    pub fn row(&self, u: usize) -> &Sketch {
        &self.rows[u]
    }

    /// Mirror one graph edge update; touches exactly rows u and v.
    pub fn update(&mut self, u: usize, v: usize, inserted: bool) {
        let (a, b) = (u.min(v), u.max(v));
        let coord = edge_index(self.transform.n, a, b);
        let delta = if inserted { 1 } else { -1 };
        self.rows[a].apply(&self.transform, coord, delta);
        self.rows[b].apply(&self.transform, coord, -delta);
    }
}
