use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft;

/// The circle `[0, Q)` sampled at `L` points; bins are `k / Q`, `k ∈ [−L/2, L/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Torus1 {
    q: u64,
    l: usize,
}

impl Torus1 {
    pub fn new(q: u64, l: usize) -> Result<Self> {
        if q == 0 || l == 0 || l % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "need a positive circumference and a positive even sample count, got Q = {q}, L = {l}"
            )));
        }
        Ok(Self { q, l })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.l
    }

    /// Distance between neighbouring samples, `Q / L`.
    pub fn spacing(&self) -> f64 {
        self.q as f64 / self.l as f64
    }

    pub fn bins(&self) -> impl Iterator<Item = i64> {
        let h = self.l as i64 / 2;
        -h..h
    }

    pub fn frequency(&self, k: i64) -> f64 {
        k as f64 / self.q as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum1 {
    torus: Torus1,
    coeffs: Vec<Complex64>,
}

impl Spectrum1 {
    pub fn zeros(torus: Torus1) -> Self {
        Self { torus, coeffs: vec![Complex64::new(0.0, 0.0); torus.l] }
    }

    pub fn from_spatial(torus: Torus1, samples: &[Complex64]) -> Result<Self> {
        if samples.len() != torus.l {
            return Err(Error::ShapeMismatch { expected: (torus.l, 1), got: (samples.len(), 1) });
        }
        let mut coeffs = samples.to_vec();
        fft::forward_1d(&mut coeffs);
        Ok(Self { torus, coeffs })
    }

    pub fn single_bin(torus: Torus1, k: i64, amplitude: Complex64) -> Self {
        let mut s = Self::zeros(torus);
        s.set(k, amplitude);
        s
    }

    pub fn torus(&self) -> Torus1 {
        self.torus
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn get(&self, k: i64) -> Complex64 {
        self.coeffs[fft::bin_index(k, self.torus.l)]
    }

    pub fn set(&mut self, k: i64, value: Complex64) {
        let i = fft::bin_index(k, self.torus.l);
        self.coeffs[i] = value;
    }

    pub fn to_spatial(&self) -> Vec<Complex64> {
        let mut out = self.coeffs.clone();
        fft::inverse_1d(&mut out);
        out
    }

    /// `ℱ^{−1}(m · ℱg)` for a multiplier given on signed bins.
    pub fn apply(&self, mut m: impl FnMut(i64) -> f64) -> Vec<Complex64> {
        let mut out = self.coeffs.clone();
        for (i, z) in out.iter_mut().enumerate() {
            *z *= m(fft::signed_bin(i, self.torus.l));
        }
        fft::inverse_1d(&mut out);
        out
    }
}

/// `(Σ|g_j|²)^{1/2}`.
pub fn l2(values: &[Complex64]) -> f64 {
    values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
