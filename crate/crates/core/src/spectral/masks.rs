use std::io::Write;

use bitvec::prelude::*;
use ndarray::Array2;
use num_complex::Complex64;

use super::freq::FrequencySet;
use super::grid::{Spectrum2, TorusGrid2};
use crate::error::{Error, Result};
use crate::fft;

/// A set of frequency bins, stored row-major in FFT order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinMask {
    dim: (usize, usize),
    bits: BitVec,
}

impl BinMask {
    pub fn empty(dim: (usize, usize)) -> Self {
        Self { dim, bits: bitvec![0; dim.0 * dim.1] }
    }

    pub fn full(dim: (usize, usize)) -> Self {
        Self { dim, bits: bitvec![1; dim.0 * dim.1] }
    }

    pub fn dim(&self) -> (usize, usize) {
        self.dim
    }

    pub fn contains_index(&self, i1: usize, i2: usize) -> bool {
        self.bits[i1 * self.dim.1 + i2]
    }

    pub fn insert_index(&mut self, i1: usize, i2: usize) {
        let w = self.dim.1;
        self.bits.set(i1 * w + i2, true);
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_subset_of(&self, other: &BinMask) -> bool {
        self.dim == other.dim && self.bits.iter_ones().all(|i| other.bits[i])
    }

    /// Row-major bits packed little-endian into bytes, rendered as hex.
    pub fn to_hex(&self) -> String {
        let mut bytes = vec![0u8; self.bits.len().div_ceil(8)];
        for i in self.bits.iter_ones() {
            bytes[i / 8] |= 1 << (i % 8);
        }
        hex::encode(bytes)
    }
}

/// Inverse transform of `mask · ℱf`: an orthogonal projection in `ℓ²`.
pub fn apply_multiplier(f: &Spectrum2, mask: &BinMask) -> Result<Array2<Complex64>> {
    if f.coeffs().dim() != mask.dim {
        return Err(Error::ShapeMismatch { expected: mask.dim, got: f.coeffs().dim() });
    }
    let mut out = f.coeffs().clone();
    for ((i1, i2), z) in out.indexed_iter_mut() {
        if !mask.contains_index(i1, i2) {
            *z = Complex64::new(0.0, 0.0);
        }
    }
    fft::inverse_2d(&mut out);
    Ok(out)
}

/// `⌈log₂ q⌉`.
pub fn ceil_log2(q: u64) -> u32 {
    if q <= 1 {
        0
    } else {
        64 - (q - 1).leading_zeros()
    }
}

/// Largest bin distance `d` with `2^{n+1}·d < q`, i.e. inside the open interval
/// `(−2^{−n−1}, 2^{−n−1})` measured in units of `1/q`.
pub fn axis_radius(q: u64, n: u32) -> i64 {
    if n + 1 >= 64 {
        return 0;
    }
    ((q - 1) >> (n + 1)) as i64
}

/// The rectangle family `1_{⋃_λ (λ + A_{n1} × A_{n2})}` with
/// `A_n = (−2^{−n−1}, 2^{−n−1})`, for `0 ≤ n_r ≤ n_max_r`.
///
/// Membership is decided in exact integer arithmetic with circular bin
/// distance on the torus. Masks are monotone in each index and constant once
/// `n_r ≥ ⌈log₂ Q_r⌉`, so `n_max_r = ⌈log₂ Q_r⌉ + 1` covers every distinct mask
/// and index values beyond it can be clamped.
#[derive(Debug, Clone)]
pub struct MaskFamily {
    grid: TorusGrid2,
    lambda_bins: Vec<(i64, i64)>,
    n_max: (u32, u32),
}

/// Builds the rectangle family of `set` on `grid`. The grid circumferences must
/// be multiples of the set's denominators, and the set must stay separated
/// modulo the grid's bandwidth.
pub fn build_masks(grid: TorusGrid2, set: &FrequencySet) -> Result<MaskFamily> {
    let (gq, sq) = (grid.q(), set.q());
    if gq.0 % sq.0 != 0 || gq.1 % sq.1 != 0 {
        return Err(Error::OffGrid { set: sq, grid: gq });
    }
    let (m1, m2) = ((gq.0 / sq.0) as i64, (gq.1 / sq.1) as i64);
    let lambda_bins: Vec<(i64, i64)> = set.points().iter().map(|&(p1, p2)| (p1 * m1, p2 * m2)).collect();
    for (i, a) in lambda_bins.iter().enumerate() {
        for b in &lambda_bins[i + 1..] {
            let far1 = grid.circular_distance(0, a.0, b.0) >= gq.0 as i64;
            let far2 = grid.circular_distance(1, a.1, b.1) >= gq.1 as i64;
            if !(far1 || far2) {
                return Err(Error::NotSeparated(*a, *b));
            }
        }
    }
    Ok(MaskFamily {
        grid,
        lambda_bins,
        n_max: (ceil_log2(gq.0) + 1, ceil_log2(gq.1) + 1),
    })
}

impl MaskFamily {
    pub fn grid(&self) -> TorusGrid2 {
        self.grid
    }

    pub fn n_max(&self) -> (u32, u32) {
        self.n_max
    }

    /// Index from which masks stop changing on each axis.
    pub fn stabilization(&self) -> (u32, u32) {
        (self.n_max.0 - 1, self.n_max.1 - 1)
    }

    /// Frequencies of the set in grid bins.
    pub fn lambda_bins(&self) -> &[(i64, i64)] {
        &self.lambda_bins
    }

    pub fn radius(&self, n1: u32, n2: u32) -> (i64, i64) {
        let q = self.grid.q();
        (axis_radius(q.0, n1), axis_radius(q.1, n2))
    }

    /// Clamps an index pair into `[0, n_max]²`; exact because of stabilization.
    pub fn clamp(&self, n1: usize, n2: usize) -> (u32, u32) {
        (
            n1.min(self.n_max.0 as usize) as u32,
            n2.min(self.n_max.1 as usize) as u32,
        )
    }

    pub fn contains(&self, n1: u32, n2: u32, k1: i64, k2: i64) -> bool {
        let (r1, r2) = self.radius(n1, n2);
        self.lambda_bins.iter().any(|&(p1, p2)| {
            self.grid.circular_distance(0, k1, p1) <= r1 && self.grid.circular_distance(1, k2, p2) <= r2
        })
    }

    /// Visits the FFT-order index of every bin in the mask `(n1, n2)`.
    /// Bins shared by overlapping wrap-arounds may be visited more than once.
    fn for_each_index(&self, n1: u32, n2: u32, mut visit: impl FnMut(usize, usize)) {
        let (l1, l2) = self.grid.len();
        let (r1, r2) = self.radius(n1, n2);
        let span = |r: i64, l: usize| (2 * r + 1).min(l as i64);
        for &(p1, p2) in &self.lambda_bins {
            for d1 in 0..span(r1, l1) {
                let i1 = fft::bin_index(p1 - r1 + d1, l1);
                for d2 in 0..span(r2, l2) {
                    visit(i1, fft::bin_index(p2 - r2 + d2, l2));
                }
            }
        }
    }

    pub fn mask(&self, n1: u32, n2: u32) -> BinMask {
        let mut m = BinMask::empty(self.grid.len());
        self.for_each_index(n1, n2, |i1, i2| m.insert_index(i1, i2));
        m
    }

    /// `mask(n1, n2) · ℱf` as a spectrum.
    pub fn masked(&self, f: &Spectrum2, n1: u32, n2: u32) -> Spectrum2 {
        let mut out = Spectrum2::zeros(self.grid);
        let src = f.coeffs();
        let dst = out.coeffs_mut();
        self.for_each_index(n1, n2, |i1, i2| dst[(i1, i2)] = src[(i1, i2)]);
        out
    }

    /// `ℱ^{−1}(mask(n1, n2) · ℱf)`.
    pub fn apply(&self, f: &Spectrum2, n1: u32, n2: u32) -> Array2<Complex64> {
        self.masked(f, n1, n2).to_spatial()
    }

    /// All index pairs `(n1, n2) ∈ [0, n_max]²` in row-major order.
    pub fn indices(&self) -> Vec<(u32, u32)> {
        (0..=self.n_max.0)
            .flat_map(|a| (0..=self.n_max.1).map(move |b| (a, b)))
            .collect()
    }

    /// One line per mask: `n1,n2,<hex bitset>`.
    pub fn export_bitsets<W: Write>(&self, mut w: W) -> Result<()> {
        let (l1, l2) = self.grid.len();
        writeln!(w, "# grid {l1}x{l2} row-major fft order, little-endian bits")?;
        for (n1, n2) in self.indices() {
            writeln!(w, "{n1},{n2},{}", self.mask(n1, n2).to_hex())?;
        }
        Ok(())
    }
}
