//! Even/odd dyadic annulus decomposition and the Fejér-combination form of
//! the rectangle projection on parity-restricted spectra.

use ndarray::{Array2, Zip};

use super::{fejer_combination, DyadicScalePair};
use crate::error::{Error, Result};
use crate::spectral::freq::FrequencySet;
use crate::spectral::grid::Spectrum2;
use crate::spectral::masks::build_masks;

/// The `n` with `2^{−n−1} ≤ |k|/q < 2^{−n}`, i.e. `k/q ∈ A_{n−1} ∖ A_n`;
/// `None` for `k = 0`. Exact integer comparisons.
pub fn annulus_index(k: i64, q: u64) -> Option<i32> {
    if k == 0 {
        return None;
    }
    let a = k.unsigned_abs() as u128;
    let q = q as u128;
    if a < q {
        let mut n = 0;
        while a << (n + 1) < q {
            n += 1;
        }
        Some(n)
    } else {
        let mut m = 1;
        while a >= q << m {
            m += 1;
        }
        Some(-m)
    }
}

/// Parity of the annulus containing `k / q`.
pub fn annulus_parity(k: i64, q: u64) -> Option<u8> {
    annulus_index(k, q).map(|n| n.rem_euclid(2) as u8)
}

/// `m_δ = m_{δ1} ⊗ m_{δ2}` for `δ ∈ {00, 01, 10, 11}` in that order, as 0/1
/// arrays in FFT order. Bins with a zero coordinate belong to none of them.
pub struct ParityMasks {
    pub masks: [Array2<u8>; 4],
}

impl ParityMasks {
    pub fn sum(&self) -> Array2<u8> {
        let mut s = self.masks[0].clone();
        for m in &self.masks[1..] {
            s += m;
        }
        s
    }
}

pub fn parity_masks(grid: crate::spectral::grid::TorusGrid2) -> ParityMasks {
    let (q1, q2) = grid.q();
    let make = |d1: u8, d2: u8| {
        Array2::from_shape_fn(grid.len(), |(i1, i2)| {
            let (k1, k2) = grid.bin_of(i1, i2);
            (annulus_parity(k1, q1) == Some(d1) && annulus_parity(k2, q2) == Some(d2)) as u8
        })
    };
    ParityMasks { masks: [make(0, 0), make(0, 1), make(1, 0), make(1, 1)] }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FejerIdentityReport {
    /// `max |mask route − kernel route| / max |mask route|` (0 if both vanish).
    pub max_rel_err: f64,
    pub max_abs_err: f64,
}

/// Compares `ℱ^{−1}(1_{A_{n1} × A_{n2}} ℱf)` computed by bin masking with the
/// Fejér-combination route
/// `((2σ_{2D¹_{n1}} − σ_{D¹_{n1}}) ⊗ (2σ_{2D²_{n2}} − σ_{D²_{n2}})) * f`.
/// `f` must be supported on even annuli in the first coordinate and odd
/// annuli in the second.
pub fn fejer_identity_check(f: &Spectrum2, n1: u32, n2: u32) -> Result<FejerIdentityReport> {
    let grid = f.grid();
    let (q1, q2) = grid.q();
    for (k1, k2, _) in f.nonzero_bins() {
        if annulus_parity(k1, q1) != Some(0) || annulus_parity(k2, q2) != Some(1) {
            return Err(Error::SupportViolation(k1, k2));
        }
    }
    let origin = FrequencySet::new(1, 1, vec![(0, 0)])?;
    let masked = build_masks(grid, &origin)?.apply(f, n1, n2);

    let d1 = DyadicScalePair::new(n1 as i32).d1();
    let d2 = DyadicScalePair::new(n2 as i32).d2();
    let mut g = f.clone();
    let coeffs = g.coeffs_mut();
    for ((i1, i2), z) in coeffs.indexed_iter_mut() {
        let (k1, k2) = grid.bin_of(i1, i2);
        *z *= fejer_combination(d1, grid.frequency(0, k1)) * fejer_combination(d2, grid.frequency(1, k2));
    }
    let kernel = g.to_spatial();

    let mut max_abs_err = 0.0_f64;
    let mut scale = 0.0_f64;
    Zip::from(&masked).and(&kernel).for_each(|a, b| {
        max_abs_err = max_abs_err.max((a - b).norm());
        scale = scale.max(a.norm());
    });
    let max_rel_err = if scale == 0.0 { max_abs_err } else { max_abs_err / scale };
    Ok(FejerIdentityReport { max_rel_err, max_abs_err })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::grid::TorusGrid2;
    use num_complex::Complex64;

    #[test]
    fn annulus_indices() {
        // Q = 16: |k| = 8 → 1/2 ∈ [1/2, 1) → n = 0.
        assert_eq!(annulus_index(8, 16), Some(0));
        assert_eq!(annulus_index(-4, 16), Some(1));
        assert_eq!(annulus_index(7, 16), Some(1));
        assert_eq!(annulus_index(16, 16), Some(-1));
        assert_eq!(annulus_index(40, 16), Some(-2));
        assert_eq!(annulus_index(1, 16), Some(3));
        assert_eq!(annulus_index(0, 16), None);
    }

    #[test]
    fn parity_masks_partition_off_axis_bins() {
        let grid = TorusGrid2::new(10, 12, 32, 16).unwrap();
        let pm = parity_masks(grid);
        let sum = pm.sum();
        for ((i1, i2), &v) in sum.indexed_iter() {
            let (k1, k2) = grid.bin_of(i1, i2);
            assert_eq!(v, (k1 != 0 && k2 != 0) as u8);
        }
    }

    #[test]
    fn single_admissible_bin() {
        let grid = TorusGrid2::new(64, 64, 64, 64).unwrap();
        // k1 = 10 → n = 2 (even); k2 = 20 → n = 1 (odd).
        let f = Spectrum2::single_bin(grid, 10, 20, Complex64::new(1.0, 1.0));
        for n1 in 0..6 {
            for n2 in 0..6 {
                let r = fejer_identity_check(&f, n1, n2).unwrap();
                assert!(r.max_abs_err < 1e-14, "{n1} {n2} {r:?}");
            }
        }
        let bad = Spectrum2::single_bin(grid, 20, 20, Complex64::new(1.0, 0.0));
        assert!(fejer_identity_check(&bad, 0, 0).is_err());
        let zero = Spectrum2::zeros(grid);
        assert_eq!(fejer_identity_check(&zero, 1, 1).unwrap().max_rel_err, 0.0);
    }
}
