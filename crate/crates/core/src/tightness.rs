//! ℤ₂-tightness: for every vertex subset `S`, the map
//! `H_*(X[S]; ℤ₂) → H_*(X; ℤ₂)` induced by inclusion is injective.
//!
//! In degree `k` the map is injective iff `dim(Z_k(Y) ∩ B_k(X)) = dim B_k(Y)`
//! for `Y = X[S]`. Equivalently, the `k`-cycles of `Y` reduced modulo
//! `B_k(X)` span a space of dimension `β_k(Y)`. Degree 0 reduces to
//! components of `Y` lying in distinct components of `X`; degree `d` is
//! always injective since `B_d(X) = 0`.
//!
//! Subsets are bitmasks scanned in Gray-code order so each step toggles a
//! single vertex and updates the face sets of `Y` incrementally.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::gf2::{iter_ones, BitMatrix, ReducedBasis};
use crate::label::VertexLabel;
use crate::prng::{GeneratorSeed, SplitMix64};

pub const DEFAULT_CEILING: usize = 20;
const MAX_VERTICES: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Mode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct TightnessOptions {
    pub mode: Mode,
    /// Largest `f0` accepted in exhaustive mode.
    pub ceiling: usize,
    /// Keep scanning after the first violation.
    pub all_violations: bool,
    /// Worker threads; `None` uses the available parallelism.
    pub jobs: Option<usize>,
}

impl Default for TightnessOptions {
    fn default() -> Self {
        Self { mode: Mode::Exhaustive, ceiling: DEFAULT_CEILING, all_violations: false, jobs: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub subset: Vec<VertexLabel>,
    pub degree: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Tight,
    NotTight,
    TightOnSample,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightnessReport {
    pub mode: Mode,
    pub checked: u64,
    pub violations: Vec<Violation>,
    pub verdict: Verdict,
}

/// Incremental GF(2) basis with pivots at lowest set bits.
struct Echelon {
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<Option<u32>>,
}

impl Echelon {
    fn new(bits: usize) -> Self {
        Self { rows: Vec::new(), pivot_row: vec![None; bits] }
    }

    fn clear(&mut self) {
        for row in &self.rows {
            if let Some(p) = lowest(row, row.len()) {
                self.pivot_row[p] = None;
            }
        }
        self.rows.clear();
    }

    /// Reduces `v` on its first `words` words; inserts it when that part
    /// stays non-zero. Returns whether it was inserted.
    fn insert(&mut self, mut v: Vec<u64>, words: usize) -> (bool, Vec<u64>) {
        while let Some(p) = lowest(&v, words) {
            match self.pivot_row[p] {
                Some(r) => {
                    for (a, b) in v.iter_mut().zip(&self.rows[r as usize]) {
                        *a ^= b;
                    }
                }
                None => {
                    self.pivot_row[p] = Some(self.rows.len() as u32);
                    self.rows.push(v);
                    return (true, Vec::new());
                }
            }
        }
        (false, v)
    }
}

fn lowest(v: &[u64], words: usize) -> Option<usize> {
    v[..words].iter().enumerate().find(|(_, w)| **w != 0).map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}

/// Read-only data shared by all workers.
struct Checker {
    n: usize,
    dim: usize,
    /// Vertex masks of the faces of each dimension.
    masks: Vec<Vec<u64>>,
    /// Boundary of each `k`-face as bits over the `(k-1)`-faces.
    boundary: Vec<Vec<Vec<u64>>>,
    /// `B_k(X)` for each `k`.
    cycles_bound: Vec<ReducedBasis>,
    /// Faces of each dimension containing each vertex.
    incident: Vec<Vec<Vec<u32>>>,
    component: Vec<usize>,
    labels: Vec<VertexLabel>,
}

fn words(bits: usize) -> usize {
    bits.div_ceil(64).max(1)
}

impl Checker {
    fn new(x: &SimplicialComplex) -> Self {
        let n = x.num_vertices();
        let dim = x.dim();
        let masks: Vec<Vec<u64>> = (0..=dim)
            .map(|j| x.faces(j).iter().map(|f| f.iter().fold(0u64, |m, &v| m | 1 << v)).collect())
            .collect();
        let mut boundary = vec![Vec::new()];
        for k in 1..=dim {
            let stride = words(x.faces(k - 1).len());
            boundary.push(
                x.faces(k)
                    .iter()
                    .map(|f| {
                        let mut row = vec![0u64; stride];
                        let mut sub = Vec::with_capacity(k);
                        for skip in 0..=k {
                            sub.clear();
                            sub.extend(f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
                            let p = x.face_position(&sub).expect("subface");
                            row[p / 64] |= 1 << (p % 64);
                        }
                        row
                    })
                    .collect(),
            );
        }
        let cycles_bound = (0..=dim)
            .map(|k| {
                let cols = x.faces(k).len();
                if k == dim {
                    return ReducedBasis::new(words(cols) * 64);
                }
                let rows = &boundary[k + 1];
                let mut m = BitMatrix::zeros(rows.len(), words(cols) * 64);
                for (r, row) in rows.iter().enumerate() {
                    for c in iter_ones(row) {
                        m.set(r, c, true);
                    }
                }
                ReducedBasis::from_matrix_rows(&m)
            })
            .collect();
        let mut incident = vec![vec![Vec::new(); dim + 1]; n];
        for (j, ms) in masks.iter().enumerate() {
            for (i, &m) in ms.iter().enumerate() {
                for v in iter_ones(&[m]) {
                    incident[v][j].push(i as u32);
                }
            }
        }
        Self {
            n,
            dim,
            masks,
            boundary,
            cycles_bound,
            incident,
            component: x.edge_graph().component_ids(),
            labels: x.labels().to_vec(),
        }
    }

    fn subset_labels(&self, mask: u64) -> Vec<VertexLabel> {
        iter_ones(&[mask]).map(|v| self.labels[v].clone()).collect()
    }
}

/// Per-worker state: the face sets of the current `Y` and scratch bases.
struct Worker<'a> {
    c: &'a Checker,
    mask: u64,
    members: Vec<Vec<u64>>,
    echelon: Vec<Echelon>,
    parent: Vec<usize>,
}

impl<'a> Worker<'a> {
    fn new(c: &'a Checker) -> Self {
        let members = c.masks.iter().map(|m| vec![0u64; words(m.len())]).collect();
        let echelon = (0..=c.dim).map(|k| Echelon::new(words(c.masks[k.saturating_sub(1)].len()) * 64)).collect();
        Self { c, mask: 0, members, echelon, parent: vec![0; c.n] }
    }

    fn set_mask(&mut self, mask: u64) {
        self.mask = mask;
        for (j, ms) in self.c.masks.iter().enumerate() {
            let row = &mut self.members[j];
            row.iter_mut().for_each(|w| *w = 0);
            for (i, &m) in ms.iter().enumerate() {
                if m & !mask == 0 {
                    row[i / 64] |= 1 << (i % 64);
                }
            }
        }
    }

    fn toggle(&mut self, v: usize) {
        self.mask ^= 1 << v;
        let adding = self.mask >> v & 1 == 1;
        for j in 0..=self.c.dim {
            for &i in &self.c.incident[v][j] {
                let i = i as usize;
                if !adding {
                    self.members[j][i / 64] &= !(1 << (i % 64));
                } else if self.c.masks[j][i] & !self.mask == 0 {
                    self.members[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Degree-0 injectivity: distinct components of `Y` stay distinct in `X`.
    fn injective0(&mut self) -> bool {
        for v in iter_ones(&[self.mask]).collect::<Vec<_>>() {
            self.parent[v] = v;
        }
        if self.c.dim >= 1 {
            let edges: Vec<usize> = iter_ones(&self.members[1]).collect();
            for i in edges {
                let m = self.c.masks[1][i];
                let (u, v) = (m.trailing_zeros() as usize, 63 - m.leading_zeros() as usize);
                let (a, b) = (self.find(u), self.find(v));
                self.parent[a] = b;
            }
        }
        let mut seen = std::collections::HashSet::new();
        for v in iter_ones(&[self.mask]).collect::<Vec<_>>() {
            if self.find(v) == v && !seen.insert(self.c.component[v]) {
                return false;
            }
        }
        true
    }

    /// Row-reduces `∂_k` on the `k`-faces of `Y`. Returns its rank and a
    /// basis of `Z_k(Y)` as vectors over the `k`-faces of `X`.
    fn eliminate(&mut self, k: usize) -> (usize, Vec<Vec<u64>>) {
        let left = words(self.c.masks[k - 1].len());
        let right = words(self.c.masks[k].len());
        let ech = &mut self.echelon[k];
        ech.clear();
        let mut kernel = Vec::new();
        for i in iter_ones(&self.members[k]) {
            let mut row = Vec::with_capacity(left + right);
            row.extend_from_slice(&self.c.boundary[k][i]);
            row.resize(left + right, 0);
            row[left + i / 64] |= 1 << (i % 64);
            let (inserted, rest) = ech.insert(row, left);
            if !inserted {
                kernel.push(rest[left..].to_vec());
            }
        }
        (ech.rows.len(), kernel)
    }

    /// First degree in which the map fails to be injective.
    fn first_violation(&mut self, only: Option<usize>) -> Option<usize> {
        let d = self.c.dim;
        if only.is_none_or(|k| k == 0) && !self.injective0() {
            return Some(0);
        }
        if d == 0 {
            return None;
        }
        let top = only.map_or(d - 1, |k| k.min(d - 1));
        let low = only.unwrap_or(1).max(1);
        if low > top {
            return None;
        }
        let mut kernel_k = self.eliminate(low).1;
        for k in low..=top {
            let (rank_next, kernel_next) = self.eliminate(k + 1);
            let beta = kernel_k.len() - rank_next;
            if beta > 0 {
                let mut residues = Echelon::new(words(self.c.masks[k].len()) * 64);
                let stride = words(self.c.masks[k].len());
                let mut rank = 0;
                for mut z in kernel_k.drain(..) {
                    self.c.cycles_bound[k].reduce(&mut z);
                    if residues.insert(z, stride).0 {
                        rank += 1;
                    }
                }
                if rank < beta {
                    return Some(k);
                }
            }
            kernel_k = kernel_next;
        }
        None
    }
}

fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Whether `H_k(X[S]) → H_k(X)` is injective over ℤ₂.
pub fn homology_map_injective<S: AsRef<str>>(x: &SimplicialComplex, subset: &[S], k: usize) -> Result<bool> {
    let n = x.num_vertices();
    if n > MAX_VERTICES {
        return Err(Error::SubsetSpaceTooLarge { f0: n, ceiling: MAX_VERTICES });
    }
    let mut mask = 0u64;
    for s in subset {
        mask |= 1 << x.require_vertex(s.as_ref())?;
    }
    if k >= x.dim() || mask == 0 {
        return Ok(true);
    }
    let checker = Checker::new(x);
    let mut w = Worker::new(&checker);
    w.set_mask(mask);
    Ok(w.first_violation(Some(k)).is_none())
}

/// Tightness check with default options for the given mode.
pub fn is_tight_z2(x: &SimplicialComplex, mode: Mode) -> Result<TightnessReport> {
    check_tightness(x, &TightnessOptions { mode, ..TightnessOptions::default() })
}

pub fn check_tightness(x: &SimplicialComplex, options: &TightnessOptions) -> Result<TightnessReport> {
    let n = x.num_vertices();
    let ceiling = match options.mode {
        Mode::Exhaustive => options.ceiling.min(MAX_VERTICES),
        Mode::Sampled { .. } => MAX_VERTICES,
    };
    if n > ceiling {
        return Err(Error::SubsetSpaceTooLarge { f0: n, ceiling });
    }
    let checker = Checker::new(x);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let stop = AtomicBool::new(false);
    let found = Mutex::new(Vec::new());
    let record = |mask: u64, k: usize| {
        found.lock().expect("lock").push((mask, k));
        if !options.all_violations {
            stop.store(true, Ordering::Relaxed);
        }
    };

    // A degree-0 failure always has a two-vertex witness: two vertices in
    // distinct components of Y, hence non-adjacent, in one component of X.
    let mut pair_checks = 0;
    if matches!(options.mode, Mode::Exhaustive) && n >= 3 {
        let mut w = Worker::new(&checker);
        for u in 0..n {
            for v in u + 1..n {
                w.set_mask(1 << u | 1 << v);
                pair_checks += 1;
                if !w.injective0() {
                    record(w.mask, 0);
                }
            }
        }
    }

    let run = || -> u64 {
        if stop.load(Ordering::Relaxed) {
            return pair_checks;
        }
        match options.mode {
            Mode::Exhaustive => {
                let total = 1u64 << n;
                let chunks = 512u64.min(total);
                (0..chunks)
                    .into_par_iter()
                    .map(|c| {
                        let (start, end) = (total * c / chunks, total * (c + 1) / chunks);
                        let mut w = Worker::new(&checker);
                        let mut checked = 0;
                        for i in start..end {
                            if stop.load(Ordering::Relaxed) {
                                break;
                            }
                            if i == start {
                                w.set_mask(gray(i));
                            } else {
                                w.toggle(i.trailing_zeros() as usize);
                            }
                            if w.mask == 0 || w.mask == full {
                                continue;
                            }
                            checked += 1;
                            if let Some(k) = w.first_violation(None) {
                                record(w.mask, k);
                            }
                        }
                        checked
                    })
                    .sum()
            }
            Mode::Sampled { count, seed } => {
                let mut rng = SplitMix64::new(GeneratorSeed(seed));
                let mut samples = Vec::with_capacity(count as usize);
                while (samples.len() as u64) < count && full > 1 {
                    let m = rng.next_u64() & full;
                    if m != 0 && m != full {
                        samples.push(m);
                    }
                }
                samples
                    .par_chunks(64)
                    .map(|chunk| {
                        let mut w = Worker::new(&checker);
                        let mut checked = 0;
                        for &m in chunk {
                            if stop.load(Ordering::Relaxed) {
                                break;
                            }
                            w.set_mask(m);
                            checked += 1;
                            if let Some(k) = w.first_violation(None) {
                                record(m, k);
                            }
                        }
                        checked
                    })
                    .sum()
            }
        }
    };
    let checked = match options.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::InvalidParameters(e.to_string()))?
            .install(run),
        None => run(),
    };

    let mut raw = found.into_inner().expect("lock");
    raw.sort_by_key(|&(m, k)| (m.count_ones(), m, k));
    raw.dedup();
    if !options.all_violations {
        raw.truncate(1);
    }
    let mut violations: Vec<Violation> =
        raw.into_iter().map(|(m, k)| Violation { subset: checker.subset_labels(m), degree: k }).collect();
    if options.all_violations {
        violations.sort();
    }
    let verdict = match (violations.is_empty(), options.mode) {
        (false, _) => Verdict::NotTight,
        (true, Mode::Exhaustive) => Verdict::Tight,
        (true, Mode::Sampled { .. }) => Verdict::TightOnSample,
    };
    Ok(TightnessReport { mode: options.mode, checked, violations, verdict })
}
