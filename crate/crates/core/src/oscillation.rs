//! Lacunary windows and one- and two-parameter oscillation seminorms.
//!
//! All seminorms act on finite arrays. A lacunary sequence whose last term
//! lies past the array is an error; callers that want the finite-truncation
//! convention call [`LacunarySeq::truncated`] first, which drops the windows
//! that do not fit.

use ndarray::Array2;
use num_complex::Complex64;

use crate::dyadic_rm::Seq2;
use crate::error::{Error, Result};

/// Read access to a finite two-parameter array.
pub trait Field2 {
    fn dim(&self) -> (usize, usize);
    fn at(&self, n1: usize, n2: usize) -> Complex64;
}

impl Field2 for Array2<Complex64> {
    fn dim(&self) -> (usize, usize) {
        Array2::dim(self)
    }

    fn at(&self, n1: usize, n2: usize) -> Complex64 {
        self[(n1, n2)]
    }
}

impl Field2 for Seq2 {
    fn dim(&self) -> (usize, usize) {
        Seq2::dim(self)
    }

    fn at(&self, n1: usize, n2: usize) -> Complex64 {
        self.values()[(n1, n2)]
    }
}

impl<T: Field2 + ?Sized> Field2 for &T {
    fn dim(&self) -> (usize, usize) {
        (**self).dim()
    }

    fn at(&self, n1: usize, n2: usize) -> Complex64 {
        (**self).at(n1, n2)
    }
}

/// An array given by a closure, for sequences too large to materialize.
#[derive(Clone)]
pub struct FnField<F> {
    dim: (usize, usize),
    f: F,
}

impl<F: Fn(usize, usize) -> Complex64> FnField<F> {
    pub fn new(dim: (usize, usize), f: F) -> Self {
        Self { dim, f }
    }
}

impl<F: Fn(usize, usize) -> Complex64> Field2 for FnField<F> {
    fn dim(&self) -> (usize, usize) {
        self.dim
    }

    fn at(&self, n1: usize, n2: usize) -> Complex64 {
        (self.f)(n1, n2)
    }
}

/// The convergent but unbounded sequence `a_{n1,n2} = n2` if `n1 = 0`, else 0,
/// truncated to `0 ≤ n1, n2 ≤ truncation`.
pub fn unbounded_convergent(truncation: usize) -> FnField<impl Fn(usize, usize) -> Complex64 + Clone> {
    FnField::new((truncation + 1, truncation + 1), |n1, n2| {
        if n1 == 0 {
            Complex64::new(n2 as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

pub fn to_array<F: Field2>(a: &F) -> Array2<Complex64> {
    Array2::from_shape_fn(a.dim(), |(i, j)| a.at(i, j))
}

/// Increasing positive integers `N_1 < … < N_K` with `τ·N_k ≤ N_{k+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LacunarySeq {
    terms: Vec<usize>,
    tau: f64,
}

impl LacunarySeq {
    pub fn new(terms: Vec<usize>, tau: f64) -> Result<Self> {
        if !(tau > 1.0) || !tau.is_finite() {
            return Err(Error::NotLacunary(format!("ratio {tau} must exceed 1")));
        }
        if terms.is_empty() {
            return Err(Error::NotLacunary("empty sequence".into()));
        }
        if terms[0] == 0 {
            return Err(Error::NotLacunary("terms must be positive".into()));
        }
        for w in terms.windows(2) {
            if w[1] <= w[0] || tau * w[0] as f64 > w[1] as f64 {
                return Err(Error::NotLacunary(format!(
                    "{} -> {} violates ratio {tau}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { terms, tau })
    }

    /// `N_1 = first`, `N_{k+1} = max(⌈τ·N_k⌉, N_k + 1)`, with `count` terms.
    pub fn geometric(first: usize, tau: f64, count: usize) -> Result<Self> {
        if first == 0 || count == 0 {
            return Err(Error::NotLacunary("need a positive first term and count".into()));
        }
        let mut terms = Vec::with_capacity(count);
        let mut n = first;
        for k in 0..count {
            terms.push(n);
            if k + 1 == count {
                break;
            }
            let next = (tau * n as f64).ceil();
            if !(next < (1u64 << 53) as f64) {
                return Err(Error::NotLacunary(format!("term {} of ratio {tau} overflows", k + 2)));
            }
            n = (next as usize).max(n + 1);
        }
        Self::new(terms, tau)
    }

    /// `N_k = 2^{k−1}` for `k = 1..=count`.
    pub fn powers_of_two(count: usize) -> Result<Self> {
        Self::geometric(1, 2.0, count)
    }

    pub fn terms(&self) -> &[usize] {
        &self.terms
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn last(&self) -> usize {
        *self.terms.last().expect("non-empty by construction")
    }

    pub fn num_windows(&self) -> usize {
        self.terms.len() - 1
    }

    /// Consecutive pairs `(N_k, N_{k+1})`.
    pub fn windows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.terms.windows(2).map(|w| (w[0], w[1]))
    }

    /// Prefix of terms not exceeding `last`, or `None` if the first term does.
    pub fn truncated(&self, last: usize) -> Option<Self> {
        let terms: Vec<usize> = self.terms.iter().copied().take_while(|&n| n <= last).collect();
        if terms.is_empty() {
            None
        } else {
            Some(Self { terms, tau: self.tau })
        }
    }
}

fn window_sup_1d(b: &[Complex64], lo: usize, hi: usize) -> f64 {
    let anchor = b[lo];
    b[lo..=hi].iter().fold(0.0_f64, |m, v| m.max((v - anchor).norm()))
}

/// `(Σ_k sup_{N_k ≤ n ≤ N_{k+1}} |b_n − b_{N_k}|²)^{1/2}`.
pub fn osc_1d(b: &[Complex64], windows: &LacunarySeq) -> Result<f64> {
    let last = b.len().checked_sub(1).ok_or(Error::WindowOutOfRange { endpoint: windows.last(), last: 0 })?;
    if windows.last() > last {
        return Err(Error::WindowOutOfRange { endpoint: windows.last(), last });
    }
    Ok(windows
        .windows()
        .map(|(lo, hi)| window_sup_1d(b, lo, hi).powi(2))
        .sum::<f64>()
        .sqrt())
}

/// `sup_{N_k ≤ n1, n2 ≤ N_{k+1}} |a_{n1,n2} − a_{N_k,N_k}|` for one window.
pub fn window_sup<F: Field2>(a: &F, lo: usize, hi: usize) -> f64 {
    let anchor = a.at(lo, lo);
    let mut best = 0.0_f64;
    for n1 in lo..=hi {
        for n2 in lo..=hi {
            best = best.max((a.at(n1, n2) - anchor).norm());
        }
    }
    best
}

fn check_windows<F: Field2>(a: &F, windows: &LacunarySeq) -> Result<()> {
    let (d1, d2) = a.dim();
    let last = d1.min(d2).saturating_sub(1);
    if d1 == 0 || d2 == 0 || windows.last() > last {
        return Err(Error::WindowOutOfRange { endpoint: windows.last(), last });
    }
    Ok(())
}

/// `(Σ_k sup_{N_k ≤ n1, n2 ≤ N_{k+1}} |a_{n1,n2} − a_{N_k,N_k}|²)^{1/2}`.
pub fn osc_2d<F: Field2>(a: &F, windows: &LacunarySeq) -> Result<f64> {
    check_windows(a, windows)?;
    Ok(windows
        .windows()
        .map(|(lo, hi)| window_sup(a, lo, hi).powi(2))
        .sum::<f64>()
        .sqrt())
}

/// One of the four index regions determined by a threshold `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// `n1 < w1`, `n2 < w2`
    R00,
    /// `n1 < w1`, `n2 ≥ w2`
    R01,
    /// `n1 ≥ w1`, `n2 < w2`
    R10,
    /// `n1 ≥ w1`, `n2 ≥ w2`
    R11,
}

impl Region {
    pub const ALL: [Region; 4] = [Region::R00, Region::R01, Region::R10, Region::R11];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionSplit {
    w: (usize, usize),
}

impl RegionSplit {
    pub fn new(w1: usize, w2: usize) -> Result<Self> {
        if w1 == 0 || w2 == 0 {
            return Err(Error::InvalidArgument("region thresholds must be positive".into()));
        }
        Ok(Self { w: (w1, w2) })
    }

    pub fn w(&self) -> (usize, usize) {
        self.w
    }

    pub fn region_of(&self, n1: usize, n2: usize) -> Region {
        match (n1 >= self.w.0, n2 >= self.w.1) {
            (false, false) => Region::R00,
            (false, true) => Region::R01,
            (true, false) => Region::R10,
            (true, true) => Region::R11,
        }
    }
}

/// The oscillation seminorm restricted to windows whose diagonal endpoints
/// `(N_k, N_k)` and `(N_{k+1}, N_{k+1})` both lie in `region`.
pub fn osc_mu<F: Field2>(a: &F, windows: &LacunarySeq, split: RegionSplit, region: Region) -> Result<f64> {
    check_windows(a, windows)?;
    Ok(windows
        .windows()
        .filter(|&(lo, hi)| split.region_of(lo, lo) == region && split.region_of(hi, hi) == region)
        .map(|(lo, hi)| window_sup(a, lo, hi).powi(2))
        .sum::<f64>()
        .sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma3Report {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn sup_abs<F: Field2>(a: &F) -> f64 {
    let (d1, d2) = a.dim();
    let mut best = 0.0_f64;
    for n1 in 0..d1 {
        for n2 in 0..d2 {
            best = best.max(a.at(n1, n2).norm());
        }
    }
    best
}

/// `osc(a) ≤ 4·sup|a| + Σ_μ osc_μ(a)` for the split at `w`.
pub fn lemma3_check<F: Field2>(a: &F, windows: &LacunarySeq, split: RegionSplit) -> Result<Lemma3Report> {
    let lhs = osc_2d(a, windows)?;
    let sup = sup_abs(a);
    let mut rhs = 4.0 * sup;
    for region in Region::ALL {
        rhs += osc_mu(a, windows, split, region)?;
    }
    Ok(Lemma3Report { lhs, rhs, holds: lhs <= rhs + 1e-12 * sup })
}

/// Greedy lacunary construction: `N_1 = 1`; given `N_k`, the first
/// `(u1, u2) ≥ (N_k, N_k)` in lexicographic order with
/// `|a_{u1,u2} − a_{N_k,N_k}| ≥ eps` yields `N_{k+1} = 2·max(u1, u2)`.
///
/// Stops when no witness exists or the next window would leave the array.
/// Returns `None` when not even one window could be built.
pub fn witness_windows<F: Field2>(a: &F, eps: f64) -> Result<Option<LacunarySeq>> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let (d1, d2) = a.dim();
    let last = d1.min(d2).saturating_sub(1);
    let mut terms = vec![1usize];
    loop {
        let nk = *terms.last().expect("non-empty");
        if nk > last {
            break;
        }
        let anchor = a.at(nk, nk);
        let witness = (nk..d1)
            .flat_map(|u1| (nk..d2).map(move |u2| (u1, u2)))
            .find(|&(u1, u2)| (a.at(u1, u2) - anchor).norm() >= eps);
        let Some((u1, u2)) = witness else { break };
        let next = 2 * u1.max(u2);
        if next > last {
            break;
        }
        terms.push(next);
    }
    if terms.len() < 2 {
        return Ok(None);
    }
    Ok(Some(LacunarySeq::new(terms, 2.0)?))
}

/// Finite Cauchy surrogate: every pair of entries with `n1, n2 ≥ h`, where
/// `h = min(d1, d2) / 2`, differs by at most `eps`.
pub fn converges_diag<F: Field2>(a: &F, eps: f64) -> bool {
    let (d1, d2) = a.dim();
    let h = d1.min(d2) / 2;
    let tail: Vec<Complex64> = (h..d1)
        .flat_map(|n1| (h..d2).map(move |n2| (n1, n2)))
        .map(|(n1, n2)| a.at(n1, n2))
        .collect();
    diameter(tail) <= eps
}

/// Largest pairwise distance, taken over the convex hull vertices.
fn diameter(mut pts: Vec<Complex64>) -> f64 {
    pts.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    pts.dedup();
    if pts.len() < 3 {
        return pts.first().zip(pts.last()).map_or(0.0, |(x, y)| (x - y).norm());
    }
    let cross = |o: Complex64, a: Complex64, b: Complex64| (a - o).re * (b - o).im - (a - o).im * (b - o).re;
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * pts.len());
    for pass in [pts.clone(), pts.into_iter().rev().collect()] {
        let start = hull.len();
        for p in pass {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    let mut best = 0.0_f64;
    for (i, x) in hull.iter().enumerate() {
        for y in &hull[i + 1..] {
            best = best.max((x - y).norm());
        }
    }
    best
}

/// Writes `n1,n2,re,im` rows (with header) for every entry.
pub fn write_field_csv<F: Field2, W: std::io::Write>(a: &F, mut w: W) -> Result<()> {
    writeln!(w, "n1,n2,re,im")?;
    let (d1, d2) = a.dim();
    for n1 in 0..d1 {
        for n2 in 0..d2 {
            let z = a.at(n1, n2);
            writeln!(w, "{n1},{n2},{:?},{:?}", z.re, z.im)?;
        }
    }
    Ok(())
}

/// Reads `n1,n2,re[,im]` rows; the array extends to the largest indices seen
/// and missing entries are zero. A leading header line is skipped.
pub fn read_field_csv<R: std::io::BufRead>(r: R) -> Result<Array2<Complex64>> {
    let mut entries = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || (i == 0 && line.starts_with("n1")) {
            continue;
        }
        let bad = || Error::Parse(format!("line {}: expected n1,n2,re[,im]", i + 1));
        let parts: Vec<&str> = line.split(',').map(str::trim).collect();
        if parts.len() != 3 && parts.len() != 4 {
            return Err(bad());
        }
        let n1: usize = parts[0].parse().map_err(|_| bad())?;
        let n2: usize = parts[1].parse().map_err(|_| bad())?;
        let re: f64 = parts[2].parse().map_err(|_| bad())?;
        let im: f64 = parts.get(3).map_or(Ok(0.0), |v| v.parse()).map_err(|_| bad())?;
        entries.push((n1, n2, Complex64::new(re, im)));
    }
    let d1 = entries.iter().map(|e| e.0 + 1).max().unwrap_or(0);
    let d2 = entries.iter().map(|e| e.1 + 1).max().unwrap_or(0);
    let mut out = Array2::zeros((d1, d2));
    for (n1, n2, z) in entries {
        out[(n1, n2)] = z;
    }
    Ok(out)
}
