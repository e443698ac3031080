//! Dyadic interval combinatorics and both sides of the one- and
//! two-parameter Rademacher–Menshov inequalities.
//!
//! Dyadic intervals are half-open in ℕ₀ coordinates: level `i`, index `j ≥ 1`
//! denotes `[(j−1)·2^i, j·2^i)`. A block sum of first differences over such an
//! interval telescopes to the difference of the values at its two endpoints,
//! so `Σ_{k ∈ ((j−1)2^i, j2^i]} Δ_k(b) = b_{j2^i} − b_{(j−1)2^i}`.
//!
//! Finite sequences carry the index `2^s` inclusively: the right-hand sides
//! read `b_{2^s}` while the suprema on the left stop at `2^s − 1`.

use std::f64::consts::SQRT_2;

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{complex_gaussian, trial_rng};

const TWO_SQRT_2: f64 = 2.0 * SQRT_2;
const BLOCK_CONSTANT: f64 = 8.0;
/// Relative tolerance applied to `max |entry|` when comparing both sides.
pub const RELATIVE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicInterval {
    level: u32,
    index: u64,
}

impl DyadicInterval {
    pub fn new(level: u32, index: u64) -> Result<Self> {
        if index == 0 || level >= 63 {
            return Err(Error::InvalidArgument(format!(
                "dyadic interval needs index >= 1 and level < 63, got level {level}, index {index}"
            )));
        }
        Ok(Self { level, index })
    }

    /// The dyadic interval of length `2^level` starting at `start`.
    pub fn starting_at(start: u64, level: u32) -> Result<Self> {
        if level >= 63 || start % (1u64 << level) != 0 {
            return Err(Error::InvalidArgument(format!(
                "{start} is not aligned to 2^{level}"
            )));
        }
        Self::new(level, (start >> level) + 1)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn start(&self) -> u64 {
        (self.index - 1) << self.level
    }

    /// Exclusive right endpoint.
    pub fn end(&self) -> u64 {
        self.index << self.level
    }

    pub fn len(&self) -> u64 {
        1u64 << self.level
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A greedy decomposition of `[m, n)` into consecutive dyadic intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    parts: Vec<DyadicInterval>,
    source: (u64, u64),
}

impl Decomposition {
    pub fn parts(&self) -> &[DyadicInterval] {
        &self.parts
    }

    pub fn source(&self) -> (u64, u64) {
        self.source
    }

    /// Number of parts at each level `0..=max_level`.
    pub fn level_multiplicities(&self) -> Vec<usize> {
        let top = self.parts.iter().map(|p| p.level).max().unwrap_or(0) as usize;
        let mut counts = vec![0; top + 1];
        for p in &self.parts {
            counts[p.level as usize] += 1;
        }
        counts
    }

    /// Checks consecutiveness, coverage of the source interval and the
    /// "at most two parts per length" property.
    pub fn is_valid(&self) -> bool {
        let (m, n) = self.source;
        let mut cursor = m;
        for p in &self.parts {
            if p.start() != cursor || p.start() % p.len() != 0 {
                return false;
            }
            cursor = p.end();
        }
        cursor == n && self.level_multiplicities().iter().all(|&c| c <= 2)
    }
}

/// Greedy dyadic decomposition of `[m, n)` with `0 ≤ m < n ≤ 2^s`: repeatedly
/// take the longest dyadic interval that starts at the current left endpoint
/// and stays inside the remainder.
pub fn decompose(m: u64, n: u64, s: u32) -> Result<Decomposition> {
    if s >= 63 || m >= n || n > (1u64 << s) {
        return Err(Error::InvalidInterval { m, n, s });
    }
    let mut parts = Vec::new();
    let mut cursor = m;
    while cursor < n {
        let aligned = if cursor == 0 { s } else { cursor.trailing_zeros().min(s) };
        let mut level = aligned;
        while cursor + (1u64 << level) > n {
            level -= 1;
        }
        let part = DyadicInterval::starting_at(cursor, level)?;
        cursor = part.end();
        parts.push(part);
    }
    Ok(Decomposition { parts, source: (m, n) })
}

/// One-parameter sequence `b_0, …, b_{2^s}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Seq1 {
    s: u32,
    values: Vec<Complex64>,
}

impl Seq1 {
    pub fn new(s: u32, values: Vec<Complex64>) -> Result<Self> {
        let expected = checked_len(s)?;
        if values.len() != expected {
            return Err(Error::ShapeMismatch { expected: (expected, 1), got: (values.len(), 1) });
        }
        Ok(Self { s, values })
    }

    pub fn from_fn(s: u32, f: impl FnMut(usize) -> Complex64) -> Result<Self> {
        let len = checked_len(s)?;
        Self::new(s, (0..len).map(f).collect())
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Result<Complex64> {
        self.values.get(n).copied().ok_or(Error::IndexOutOfRange(n, 0))
    }

    fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

/// Two-parameter sequence `a_{n1,n2}` for `0 ≤ n1 ≤ 2^{s1}`, `0 ≤ n2 ≤ 2^{s2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Seq2 {
    s1: u32,
    s2: u32,
    values: Array2<Complex64>,
}

impl Seq2 {
    pub fn new(s1: u32, s2: u32, values: Array2<Complex64>) -> Result<Self> {
        let expected = (checked_len(s1)?, checked_len(s2)?);
        if values.dim() != expected {
            return Err(Error::ShapeMismatch { expected, got: values.dim() });
        }
        let values = if values.is_standard_layout() { values } else { values.as_standard_layout().into_owned() };
        Ok(Self { s1, s2, values })
    }

    pub fn from_fn(s1: u32, s2: u32, f: impl FnMut((usize, usize)) -> Complex64) -> Result<Self> {
        let shape = (checked_len(s1)?, checked_len(s2)?);
        Ok(Self { s1, s2, values: Array2::from_shape_fn(shape, f) })
    }

    pub fn levels(&self) -> (u32, u32) {
        (self.s1, self.s2)
    }

    pub fn dim(&self) -> (usize, usize) {
        self.values.dim()
    }

    pub fn values(&self) -> &Array2<Complex64> {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut Array2<Complex64> {
        &mut self.values
    }

    pub fn get(&self, n1: usize, n2: usize) -> Result<Complex64> {
        self.values.get((n1, n2)).copied().ok_or(Error::IndexOutOfRange(n1, n2))
    }

    fn check_differenced(&self, n1: usize, n2: usize, first: bool, second: bool) -> Result<()> {
        let (d1, d2) = self.dim();
        if n1 >= d1 || n2 >= d2 || (first && n1 == 0) || (second && n2 == 0) {
            return Err(Error::IndexOutOfRange(n1, n2));
        }
        Ok(())
    }

    /// `a_{n1,n2} − a_{n1−1,n2}`.
    pub fn diff1(&self, n1: usize, n2: usize) -> Result<Complex64> {
        self.check_differenced(n1, n2, true, false)?;
        Ok(self.values[(n1, n2)] - self.values[(n1 - 1, n2)])
    }

    /// `a_{n1,n2} − a_{n1,n2−1}`.
    pub fn diff2(&self, n1: usize, n2: usize) -> Result<Complex64> {
        self.check_differenced(n1, n2, false, true)?;
        Ok(self.values[(n1, n2)] - self.values[(n1, n2 - 1)])
    }

    /// The double difference `a_{n1,n2} − a_{n1,n2−1} − a_{n1−1,n2} + a_{n1−1,n2−1}`.
    pub fn diff12(&self, n1: usize, n2: usize) -> Result<Complex64> {
        self.check_differenced(n1, n2, true, true)?;
        let v = &self.values;
        Ok(v[(n1, n2)] - v[(n1, n2 - 1)] - v[(n1 - 1, n2)] + v[(n1 - 1, n2 - 1)])
    }

    /// Sum of `diff12` over the block `I × J`, evaluated by the four-corner
    /// telescoping identity.
    pub fn block_diff12(&self, rows: DyadicInterval, cols: DyadicInterval) -> Result<Complex64> {
        let (r0, r1) = (rows.start() as usize, rows.end() as usize);
        let (c0, c1) = (cols.start() as usize, cols.end() as usize);
        let (d1, d2) = self.dim();
        if r1 >= d1 || c1 >= d2 {
            return Err(Error::IndexOutOfRange(r1, c1));
        }
        Ok(self.corner(r0, r1, c0, c1))
    }

    #[inline]
    fn corner(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Complex64 {
        let v = &self.values;
        v[(r1, c1)] - v[(r1, c0)] - v[(r0, c1)] + v[(r0, c0)]
    }

    fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, z| m.max(z.norm_sqr())).sqrt()
    }
}

fn checked_len(s: u32) -> Result<usize> {
    if s > 30 {
        return Err(Error::InvalidArgument(format!("level bound {s} is too large")));
    }
    Ok((1usize << s) + 1)
}

/// Summation strategy for the right-hand sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Summation {
    #[default]
    Plain,
    Compensated,
}

impl Summation {
    fn acc(self) -> Acc {
        Acc { mode: self, sum: 0.0, carry: 0.0 }
    }
}

/// Streaming form of [`Summation`]; the compensated branch is Neumaier's.
struct Acc {
    mode: Summation,
    sum: f64,
    carry: f64,
}

impl Acc {
    #[inline]
    fn add(&mut self, v: f64) {
        match self.mode {
            Summation::Plain => self.sum += v,
            Summation::Compensated => {
                let t = self.sum + v;
                if self.sum.abs() >= v.abs() {
                    self.carry += (self.sum - t) + v;
                } else {
                    self.carry += (v - t) + self.sum;
                }
                self.sum = t;
            }
        }
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Both sides of an inequality check and whether it held within tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RmReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl RmReport {
    fn new(lhs: f64, rhs: f64, scale: f64) -> Self {
        Self { lhs, rhs, holds: lhs <= rhs + RELATIVE_TOLERANCE * scale }
    }

    /// `lhs / rhs`, with `0 / 0` read as 0.
    pub fn ratio(&self) -> f64 {
        if self.rhs == 0.0 {
            if self.lhs == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.lhs / self.rhs
        }
    }
}

/// `(Σ_j |x_{j2^i} − x_{(j−1)2^i}|²)^{1/2}` for each level `i = 0..=s`, summed.
fn level_root_sum(s: u32, mode: Summation, at: impl Fn(usize) -> Complex64) -> f64 {
    let mut outer = mode.acc();
    for i in 0..=s {
        let step = 1usize << i;
        let mut inner = mode.acc();
        for j in 1..=1usize << (s - i) {
            inner.add((at(j * step) - at((j - 1) * step)).norm_sqr());
        }
        outer.add(inner.value().sqrt());
    }
    outer.value()
}

pub fn rm_rhs_1d(b: &Seq1, n0: usize) -> Result<f64> {
    rm_rhs_1d_with(b, n0, Summation::Plain)
}

/// `2√2 · Σ_{i=0}^{s} (Σ_{j=1}^{2^{s−i}} |b_{j2^i} − b_{(j−1)2^i}|²)^{1/2}`.
///
/// The anchor does not enter the bound; it is range-checked only.
pub fn rm_rhs_1d_with(b: &Seq1, n0: usize, mode: Summation) -> Result<f64> {
    if n0 >= 1usize << b.s {
        return Err(Error::IndexOutOfRange(n0, 0));
    }
    Ok(TWO_SQRT_2 * level_root_sum(b.s, mode, |n| b.values[n]))
}

pub fn rm_check_1d(b: &Seq1, n0: usize) -> Result<RmReport> {
    rm_check_1d_with(b, n0, Summation::Plain)
}

pub fn rm_check_1d_with(b: &Seq1, n0: usize, mode: Summation) -> Result<RmReport> {
    let rhs = rm_rhs_1d_with(b, n0, mode)?;
    let anchor = b.values[n0];
    let lhs = b.values[..1usize << b.s]
        .iter()
        .fold(0.0_f64, |m, v| m.max((v - anchor).norm()));
    Ok(RmReport::new(lhs, rhs, b.max_abs()))
}

/// The anchor-independent double-difference term of the two-parameter bound:
/// `8 Σ_{i1,i2} (Σ_{j1,j2} |Σ_{I×J} Δ(a)|²)^{1/2}`.
fn block_term(a: &Seq2, mode: Summation) -> f64 {
    let (s1, s2) = (a.s1, a.s2);
    let width = a.values.ncols();
    let v = a.values.as_slice().expect("standard layout");
    let at = |r: usize, c: usize| v[r * width + c];
    let mut outer = mode.acc();
    for i1 in 0..=s1 {
        for i2 in 0..=s2 {
            let (st1, st2) = (1usize << i1, 1usize << i2);
            let mut inner = mode.acc();
            for j1 in 1..=1usize << (s1 - i1) {
                let (r0, r1) = ((j1 - 1) * st1, j1 * st1);
                for j2 in 1..=1usize << (s2 - i2) {
                    let (k0, k1) = ((j2 - 1) * st2, j2 * st2);
                    inner.add((at(r1, k1) - at(r1, k0) - at(r0, k1) + at(r0, k0)).norm_sqr());
                }
            }
            outer.add(inner.value().sqrt());
        }
    }
    BLOCK_CONSTANT * outer.value()
}

/// `2√2 Σ_{i1} (Σ_{j1} |a_{j1 2^{i1}, n2} − a_{(j1−1)2^{i1}, n2}|²)^{1/2}`.
fn row_term(a: &Seq2, n2: usize, mode: Summation) -> f64 {
    let width = a.values.ncols();
    let v = a.values.as_slice().expect("standard layout");
    TWO_SQRT_2 * level_root_sum(a.s1, mode, |n| v[n * width + n2])
}

fn col_term(a: &Seq2, n1: usize, mode: Summation) -> f64 {
    let width = a.values.ncols();
    let v = a.values.as_slice().expect("standard layout");
    TWO_SQRT_2 * level_root_sum(a.s2, mode, |n| v[n1 * width + n])
}

fn open_box_sup(a: &Seq2) -> f64 {
    let (h1, h2) = (1usize << a.s1, 1usize << a.s2);
    a.values
        .slice(ndarray::s![..h1, ..h2])
        .iter()
        .fold(0.0_f64, |m, z| m.max(z.norm_sqr()))
        .sqrt()
}

fn check_anchors(a: &Seq2, n1: usize, n2: usize) -> Result<()> {
    if n1 >= 1usize << a.s1 || n2 >= 1usize << a.s2 {
        return Err(Error::IndexOutOfRange(n1, n2));
    }
    Ok(())
}

pub fn rm_rhs_2d(a: &Seq2, n1: usize, n2: usize) -> Result<f64> {
    rm_rhs_2d_with(a, n1, n2, Summation::Plain)
}

/// Full right-hand side of the two-parameter inequality anchored at `(n1, n2)`.
pub fn rm_rhs_2d_with(a: &Seq2, n1: usize, n2: usize, mode: Summation) -> Result<f64> {
    check_anchors(a, n1, n2)?;
    Ok(block_term(a, mode) + row_term(a, n2, mode) + col_term(a, n1, mode) + a.values[(n1, n2)].norm())
}

pub fn rm_check_2d(a: &Seq2, n1: usize, n2: usize) -> Result<RmReport> {
    rm_check_2d_with(a, n1, n2, Summation::Plain)
}

pub fn rm_check_2d_with(a: &Seq2, n1: usize, n2: usize, mode: Summation) -> Result<RmReport> {
    let rhs = rm_rhs_2d_with(a, n1, n2, mode)?;
    Ok(RmReport::new(open_box_sup(a), rhs, a.max_abs()))
}

/// Checks the two-parameter inequality at every admissible anchor, sharing the
/// anchor-independent terms. Entry `(n1, n2)` of the result is the report for
/// that anchor.
pub fn rm_check_2d_every_anchor(a: &Seq2) -> Array2<RmReport> {
    let (h1, h2) = (1usize << a.s1, 1usize << a.s2);
    let mut out = Vec::with_capacity(h1 * h2);
    for_each_anchor(a, |_, r| out.push(r));
    Array2::from_shape_vec((h1, h2), out).expect("one report per anchor")
}

/// Anchor-independent pieces of the two-parameter check.
struct AnchorTerms {
    lhs: f64,
    scale: f64,
    block: f64,
    rows: Vec<f64>,
    cols: Vec<f64>,
}

impl AnchorTerms {
    fn new(a: &Seq2) -> Self {
        let (h1, h2) = (1usize << a.s1, 1usize << a.s2);
        let mode = Summation::Plain;
        Self {
            lhs: open_box_sup(a),
            scale: a.max_abs(),
            block: block_term(a, mode),
            rows: (0..h2).map(|n2| row_term(a, n2, mode)).collect(),
            cols: (0..h1).map(|n1| col_term(a, n1, mode)).collect(),
        }
    }

    fn rhs(&self, a: &Seq2, n1: usize, n2: usize) -> f64 {
        self.block + self.rows[n2] + self.cols[n1] + a.values[(n1, n2)].norm_sqr().sqrt()
    }
}

/// Visits anchors in row-major order.
fn for_each_anchor(a: &Seq2, mut visit: impl FnMut((usize, usize), RmReport)) {
    let t = AnchorTerms::new(a);
    for n1 in 0..t.cols.len() {
        for n2 in 0..t.rows.len() {
            visit((n1, n2), RmReport::new(t.lhs, t.rhs(a, n1, n2), t.scale));
        }
    }
}

/// Result of the sharpness probe for the two-parameter constants.
#[derive(Debug, Clone)]
pub struct ExtremalReport {
    /// Largest `lhs / rhs` seen, including the constant probe (which attains 1).
    pub max_ratio: f64,
    /// Largest ratio among the random hill-climbing trials only.
    pub best_random_ratio: f64,
    pub argmax: Seq2,
    pub anchor: (usize, usize),
}

const HILL_STEPS: usize = 48;

fn best_anchor_ratio(a: &Seq2) -> (f64, (usize, usize)) {
    let reports = rm_check_2d_every_anchor(a);
    let mut best = (f64::NEG_INFINITY, (0, 0));
    for ((n1, n2), r) in reports.indexed_iter() {
        let ratio = r.ratio();
        if ratio > best.0 {
            best = (ratio, (n1, n2));
        }
    }
    best
}

fn normalize(a: &mut Seq2) {
    let norm = a.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        a.values.mapv_inplace(|z| z / norm);
    }
}

fn climb(s1: u32, s2: u32, seed: u64, trial: u64) -> (f64, (usize, usize), Seq2) {
    let mut rng = trial_rng(seed, trial);
    let mut current = Seq2::from_fn(s1, s2, |_| complex_gaussian(&mut rng)).expect("levels validated");
    normalize(&mut current);
    let (mut ratio, mut anchor) = best_anchor_ratio(&current);
    let (d1, d2) = current.dim();
    let mut step = 0.5;
    for _ in 0..HILL_STEPS {
        let mut candidate = current.clone();
        let idx = (rng.random_range(0..d1), rng.random_range(0..d2));
        candidate.values[idx] += complex_gaussian(&mut rng) * step;
        normalize(&mut candidate);
        let (r, an) = best_anchor_ratio(&candidate);
        if r > ratio {
            current = candidate;
            ratio = r;
            anchor = an;
        } else {
            step *= 0.95;
        }
    }
    (ratio, anchor, current)
}

/// Random search with coordinate-perturbation hill climbing for sequences
/// that make the two-parameter bound tight. Trial `t` uses stream `t` of the
/// seeded generator; the first maximum in trial order wins ties.
pub fn extremal_search(s1: u32, s2: u32, trials: usize, seed: u64) -> Result<ExtremalReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("extremal_search needs at least one trial".into()));
    }
    let len = (checked_len(s1)? * checked_len(s2)?) as f64;
    let constant = Seq2::from_fn(s1, s2, |_| Complex64::new(len.sqrt().recip(), 0.0))?;
    let (const_ratio, const_anchor) = best_anchor_ratio(&constant);

    let results: Vec<_> = (1..=trials as u64)
        .into_par_iter()
        .map(|t| climb(s1, s2, seed, t))
        .collect();

    let mut best_random = f64::NEG_INFINITY;
    let mut report = ExtremalReport {
        max_ratio: const_ratio,
        best_random_ratio: f64::NEG_INFINITY,
        argmax: constant,
        anchor: const_anchor,
    };
    for (ratio, anchor, seq) in results {
        if ratio > best_random {
            best_random = ratio;
            if ratio > report.max_ratio {
                report.max_ratio = ratio;
                report.argmax = seq;
                report.anchor = anchor;
            }
        }
    }
    report.best_random_ratio = best_random;
    Ok(report)
}

/// Outcome of checking every two-valued sequence at every anchor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExhaustiveReport {
    pub sequences: u64,
    pub checks: u64,
    pub violations: u64,
    pub max_ratio: f64,
}

/// Checks every anchor, as in [`rm_check_2d_every_anchor`], for all sequences with entries in
/// `{values.0, values.1}` on the `(2^{s1}+1) × (2^{s2}+1)` index box.
pub fn rm_exhaustive_two_valued(s1: u32, s2: u32, values: (Complex64, Complex64)) -> Result<ExhaustiveReport> {
    let cells = checked_len(s1)? * checked_len(s2)?;
    if cells > 30 {
        return Err(Error::InvalidArgument(format!("{cells} cells is too many for an exhaustive sweep")));
    }
    let total = 1u64 << cells;
    let chunk = 1u64 << 14;
    let parts: Vec<ExhaustiveReport> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut a = Seq2::from_fn(s1, s2, |_| values.0).expect("levels validated");
            let mut out = ExhaustiveReport { sequences: 0, checks: 0, violations: 0, max_ratio: 0.0 };
            for bits in c * chunk..((c + 1) * chunk).min(total) {
                for (i, z) in a.values.iter_mut().enumerate() {
                    *z = if bits >> i & 1 == 1 { values.1 } else { values.0 };
                }
                out.sequences += 1;
                // Same acceptance rule as `RmReport`; the largest ratio comes
                // from the smallest right-hand side.
                let t = AnchorTerms::new(&a);
                let slack = RELATIVE_TOLERANCE * t.scale;
                let mut min_rhs = f64::INFINITY;
                for n1 in 0..t.cols.len() {
                    for n2 in 0..t.rows.len() {
                        let rhs = t.rhs(&a, n1, n2);
                        out.violations += (t.lhs > rhs + slack) as u64;
                        min_rhs = min_rhs.min(rhs);
                    }
                }
                out.checks += (t.cols.len() * t.rows.len()) as u64;
                let worst = RmReport { lhs: t.lhs, rhs: min_rhs, holds: true };
                out.max_ratio = out.max_ratio.max(worst.ratio());
            }
            out
        })
        .collect();
    Ok(parts.into_iter().fold(
        ExhaustiveReport { sequences: 0, checks: 0, violations: 0, max_ratio: 0.0 },
        |x, y| ExhaustiveReport {
            sequences: x.sequences + y.sequences,
            checks: x.checks + y.checks,
            violations: x.violations + y.violations,
            max_ratio: x.max_ratio.max(y.max_ratio),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn spans(d: &Decomposition) -> Vec<(u64, u64)> {
        d.parts().iter().map(|p| (p.start(), p.end())).collect()
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(spans(&decompose(0, 8, 3).unwrap()), vec![(0, 8)]);
        assert_eq!(spans(&decompose(1, 7, 3).unwrap()), vec![(1, 2), (2, 4), (4, 6), (6, 7)]);
        assert_eq!(spans(&decompose(3, 4, 3).unwrap()), vec![(3, 4)]);
    }

    #[test]
    fn decompose_rejects_bad_ranges() {
        assert!(decompose(4, 4, 3).is_err());
        assert!(decompose(5, 2, 3).is_err());
        assert!(decompose(0, 9, 3).is_err());
    }

    #[test]
    fn interval_indexing() {
        let iv = DyadicInterval::new(2, 3).unwrap();
        assert_eq!((iv.start(), iv.end(), iv.len()), (8, 12, 4));
        assert!(DyadicInterval::new(1, 0).is_err());
        assert!(DyadicInterval::starting_at(6, 2).is_err());
    }

    #[test]
    fn differences_of_simple_sequences() {
        let constant = Seq2::from_fn(2, 2, |_| Complex64::new(3.0, -1.0)).unwrap();
        let bilinear = Seq2::from_fn(2, 3, |(i, j)| c((i * j) as f64)).unwrap();
        for n1 in 1..5 {
            for n2 in 1..5 {
                assert_eq!(constant.diff1(n1, n2).unwrap(), c(0.0));
                assert_eq!(constant.diff2(n1, n2).unwrap(), c(0.0));
                assert_eq!(constant.diff12(n1, n2).unwrap(), c(0.0));
                assert_eq!(bilinear.diff12(n1, n2).unwrap(), c(1.0));
            }
        }
        assert!(bilinear.diff1(0, 1).is_err());
        assert!(bilinear.diff2(1, 0).is_err());
        assert!(bilinear.diff12(5, 1).is_err());
    }

    #[test]
    fn one_parameter_rhs_of_a_bump() {
        let b = Seq1::new(1, vec![c(0.0), c(1.0), c(0.0)]).unwrap();
        assert!((rm_rhs_1d(&b, 0).unwrap() - 4.0).abs() < 1e-15);
        assert!(rm_rhs_1d(&b, 2).is_err());
    }

    #[test]
    fn linear_sequence_check() {
        let b = Seq1::from_fn(3, |n| c(n as f64)).unwrap();
        let r = rm_check_1d(&b, 0).unwrap();
        assert_eq!(r.lhs, 7.0);
        assert!(r.holds);
    }

    #[test]
    fn constant_two_parameter_sequence_is_an_equality_case() {
        let a = Seq2::from_fn(3, 2, |_| Complex64::new(0.6, 0.8)).unwrap();
        for n1 in 0..8 {
            for n2 in 0..4 {
                let r = rm_check_2d(&a, n1, n2).unwrap();
                assert!((r.lhs - 1.0).abs() < 1e-15);
                assert!((r.rhs - 1.0).abs() < 1e-15);
                assert!(r.holds);
            }
        }
    }

    #[test]
    fn every_anchor_matches_single_anchor() {
        let a = Seq2::from_fn(2, 3, |(i, j)| Complex64::new((i * 7 + j * 3) as f64 % 5.0, j as f64)).unwrap();
        let all = rm_check_2d_every_anchor(&a);
        for ((n1, n2), r) in all.indexed_iter() {
            let single = rm_check_2d(&a, n1, n2).unwrap();
            assert!((single.rhs - r.rhs).abs() < 1e-12);
            assert_eq!(single.lhs, r.lhs);
        }
    }

    #[test]
    fn compensated_and_plain_agree() {
        let a = Seq2::from_fn(3, 3, |(i, j)| Complex64::new((i as f64).sin(), (j as f64 * 1.3).cos())).unwrap();
        let p = rm_rhs_2d_with(&a, 1, 2, Summation::Plain).unwrap();
        let k = rm_rhs_2d_with(&a, 1, 2, Summation::Compensated).unwrap();
        assert!((p - k).abs() <= 1e-12 * p);
    }

    #[test]
    fn exhaustive_sweep_small_box() {
        let r = rm_exhaustive_two_valued(1, 1, (c(0.0), c(1.0))).unwrap();
        assert_eq!(r.sequences, 512);
        assert_eq!(r.checks, 512 * 4);
        assert_eq!(r.violations, 0);
        assert!(r.max_ratio <= 1.0);
    }

    #[test]
    fn extremal_search_trivial_levels() {
        let r = extremal_search(0, 0, 5, 3).unwrap();
        assert_eq!(r.max_ratio, 1.0);
        assert!(r.best_random_ratio <= 1.0);
        assert!(extremal_search(1, 1, 0, 3).is_err());
    }
}
