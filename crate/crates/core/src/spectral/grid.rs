use std::io::{BufRead, Read, Write};

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fft;
use crate::numeric::complex_gaussian;

/// Discretization of the torus `[0, Q1) × [0, Q2)` by `L1 × L2` samples.
///
/// Frequency bins on axis `r` are `k / Q_r` for `k ∈ [−L_r/2, L_r/2)`, so every
/// frequency in `Q_r⁻¹ℤ` sits exactly on a bin (modulo the bandwidth `L_r/Q_r`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusGrid2 {
    q: (u64, u64),
    l: (usize, usize),
}

impl TorusGrid2 {
    pub fn new(q1: u64, q2: u64, l1: usize, l2: usize) -> Result<Self> {
        if q1 == 0 || q2 == 0 {
            return Err(Error::InvalidArgument("torus circumferences must be positive".into()));
        }
        if l1 == 0 || l2 == 0 || l1 % 2 != 0 || l2 % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "sample counts must be positive and even, got {l1}x{l2}"
            )));
        }
        Ok(Self { q: (q1, q2), l: (l1, l2) })
    }

    pub fn q(&self) -> (u64, u64) {
        self.q
    }

    pub fn len(&self) -> (usize, usize) {
        self.l
    }

    pub fn cells(&self) -> usize {
        self.l.0 * self.l.1
    }

    /// Signed bins of one axis in ascending order.
    pub fn axis_bins(&self, axis: usize) -> impl Iterator<Item = i64> {
        let l = if axis == 0 { self.l.0 } else { self.l.1 } as i64;
        -l / 2..l / 2
    }

    /// Frequency of bin `k` on `axis`, `k / Q`.
    pub fn frequency(&self, axis: usize, k: i64) -> f64 {
        let q = if axis == 0 { self.q.0 } else { self.q.1 };
        k as f64 / q as f64
    }

    pub fn index_of(&self, k1: i64, k2: i64) -> (usize, usize) {
        (fft::bin_index(k1, self.l.0), fft::bin_index(k2, self.l.1))
    }

    pub fn bin_of(&self, i1: usize, i2: usize) -> (i64, i64) {
        (fft::signed_bin(i1, self.l.0), fft::signed_bin(i2, self.l.1))
    }

    /// Circular distance between bins on `axis`.
    pub fn circular_distance(&self, axis: usize, a: i64, b: i64) -> i64 {
        let l = if axis == 0 { self.l.0 } else { self.l.1 } as i64;
        let d = (a - b).rem_euclid(l);
        d.min(l - d)
    }
}

/// Discrete `ℓ²` norm of spatial samples, `(Σ|f_j|²)^{1/2}`.
pub fn spatial_norm(values: &Array2<Complex64>) -> f64 {
    values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn real_norm(values: &Array2<f64>) -> f64 {
    values.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Frequency-domain coefficients on a [`TorusGrid2`], stored in FFT order.
///
/// The forward transform is unnormalized, so Parseval reads
/// `Σ_k |F_k|² = L1·L2 · Σ_j |f_j|²`. [`Spectrum2::norm`] divides by `L1·L2`
/// and therefore agrees with [`spatial_norm`] of the inverse transform.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum2 {
    grid: TorusGrid2,
    coeffs: Array2<Complex64>,
}

impl Spectrum2 {
    pub fn zeros(grid: TorusGrid2) -> Self {
        Self { grid, coeffs: Array2::zeros(grid.l) }
    }

    pub fn from_coeffs(grid: TorusGrid2, coeffs: Array2<Complex64>) -> Result<Self> {
        if coeffs.dim() != grid.l {
            return Err(Error::ShapeMismatch { expected: grid.l, got: coeffs.dim() });
        }
        Ok(Self { grid, coeffs })
    }

    pub fn from_spatial(grid: TorusGrid2, samples: &Array2<Complex64>) -> Result<Self> {
        let mut coeffs = samples.clone();
        if coeffs.dim() != grid.l {
            return Err(Error::ShapeMismatch { expected: grid.l, got: coeffs.dim() });
        }
        fft::forward_2d(&mut coeffs);
        Ok(Self { grid, coeffs })
    }

    /// A single bin `(k1, k2)` with the given coefficient.
    pub fn single_bin(grid: TorusGrid2, k1: i64, k2: i64, amplitude: Complex64) -> Self {
        let mut s = Self::zeros(grid);
        s.set(k1, k2, amplitude);
        s
    }

    /// Complex Gaussian coefficients on the bins accepted by `support`,
    /// normalized to unit norm (zero if `support` accepts nothing).
    pub fn random_on<R: Rng + ?Sized>(
        grid: TorusGrid2,
        rng: &mut R,
        mut support: impl FnMut(i64, i64) -> bool,
    ) -> Self {
        let mut s = Self::zeros(grid);
        for k1 in grid.axis_bins(0) {
            for k2 in grid.axis_bins(1) {
                if support(k1, k2) {
                    let idx = grid.index_of(k1, k2);
                    s.coeffs[idx] = complex_gaussian(rng);
                }
            }
        }
        s.normalize();
        s
    }

    pub fn grid(&self) -> TorusGrid2 {
        self.grid
    }

    pub fn coeffs(&self) -> &Array2<Complex64> {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut Array2<Complex64> {
        &mut self.coeffs
    }

    pub fn get(&self, k1: i64, k2: i64) -> Complex64 {
        self.coeffs[self.grid.index_of(k1, k2)]
    }

    pub fn set(&mut self, k1: i64, k2: i64, value: Complex64) {
        let idx = self.grid.index_of(k1, k2);
        self.coeffs[idx] = value;
    }

    pub fn norm(&self) -> f64 {
        (self.coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>() / self.grid.cells() as f64).sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            self.coeffs.mapv_inplace(|z| z / n);
        }
    }

    pub fn to_spatial(&self) -> Array2<Complex64> {
        let mut out = self.coeffs.clone();
        fft::inverse_2d(&mut out);
        out
    }

    /// Nonzero bins `(k1, k2, value)` in ascending signed-bin order.
    pub fn nonzero_bins(&self) -> Vec<(i64, i64, Complex64)> {
        let mut out = Vec::new();
        for k1 in self.grid.axis_bins(0) {
            for k2 in self.grid.axis_bins(1) {
                let v = self.get(k1, k2);
                if v != Complex64::new(0.0, 0.0) {
                    out.push((k1, k2, v));
                }
            }
        }
        out
    }

    /// CSV with header `k1,k2,re,im`; one row per bin in ascending signed order.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "k1,k2,re,im")?;
        for k1 in self.grid.axis_bins(0) {
            for k2 in self.grid.axis_bins(1) {
                let v = self.get(k1, k2);
                writeln!(w, "{k1},{k2},{:?},{:?}", v.re, v.im)?;
            }
        }
        Ok(())
    }

    /// Reads `k1,k2,re,im` rows; bins not listed are zero.
    pub fn read_csv<R: BufRead>(grid: TorusGrid2, r: R) -> Result<Self> {
        let mut s = Self::zeros(grid);
        let (h1, h2) = ((grid.l.0 / 2) as i64, (grid.l.1 / 2) as i64);
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || (lineno == 0 && line.starts_with("k1")) {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 4 {
                return Err(Error::Parse(format!("line {}: expected 4 fields", lineno + 1)));
            }
            let parse_i = |s: &str| s.parse::<i64>().map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)));
            let parse_f = |s: &str| s.parse::<f64>().map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)));
            let (k1, k2) = (parse_i(fields[0])?, parse_i(fields[1])?);
            if !(-h1..h1).contains(&k1) || !(-h2..h2).contains(&k2) {
                return Err(Error::Parse(format!("line {}: bin ({k1}, {k2}) outside the grid", lineno + 1)));
            }
            s.set(k1, k2, Complex64::new(parse_f(fields[2])?, parse_f(fields[3])?));
        }
        Ok(s)
    }

    const MAGIC: [u8; 4] = *b"SPC2";

    /// Flat little-endian binary: magic `SPC2`, `Q1, Q2, L1, L2` as `u64`, then
    /// `(re, im)` pairs as `f64` in ascending signed-bin order (k1 major).
    pub fn write_binary<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(&Self::MAGIC)?;
        for v in [self.grid.q.0, self.grid.q.1, self.grid.l.0 as u64, self.grid.l.1 as u64] {
            w.write_all(&v.to_le_bytes())?;
        }
        for k1 in self.grid.axis_bins(0) {
            for k2 in self.grid.axis_bins(1) {
                let v = self.get(k1, k2);
                w.write_all(&v.re.to_le_bytes())?;
                w.write_all(&v.im.to_le_bytes())?;
            }
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if magic != Self::MAGIC {
            return Err(Error::Parse("bad spectrum magic".into()));
        }
        let mut word = [0u8; 8];
        let mut header = [0u64; 4];
        for h in header.iter_mut() {
            r.read_exact(&mut word)?;
            *h = u64::from_le_bytes(word);
        }
        let grid = TorusGrid2::new(header[0], header[1], header[2] as usize, header[3] as usize)?;
        let mut s = Self::zeros(grid);
        for k1 in grid.axis_bins(0) {
            for k2 in grid.axis_bins(1) {
                r.read_exact(&mut word)?;
                let re = f64::from_le_bytes(word);
                r.read_exact(&mut word)?;
                let im = f64::from_le_bytes(word);
                s.set(k1, k2, Complex64::new(re, im));
            }
        }
        Ok(s)
    }
}
