//! Smooth Littlewood–Paley pieces `φ_j(ξ) = ψ(log₂|ξ| + j)` with the raised
//! cosine `ψ(t) = cos²(πt/2)` on `(−1, 1)`.

use std::ops::RangeInclusive;

use num_complex::Complex64;

use super::torus1::Spectrum1;
use super::Torus1;
use crate::error::{Error, Result};

pub fn lp_profile(t: f64) -> f64 {
    if t.abs() >= 1.0 {
        0.0
    } else {
        let c = (std::f64::consts::FRAC_PI_2 * t).cos();
        c * c
    }
}

/// `φ_j(ξ)`; zero at `ξ = 0`.
pub fn lp_weight(j: i32, xi: f64) -> f64 {
    if xi == 0.0 {
        0.0
    } else {
        lp_profile(xi.abs().log2() + j as f64)
    }
}

/// Octaves `j` whose piece touches some nonzero bin of `torus`.
pub fn lp_octaves(torus: Torus1) -> RangeInclusive<i32> {
    let lo_xi = torus.frequency(1);
    let hi_xi = torus.frequency(torus.len() as i64 / 2);
    // φ_j ≠ 0 iff −1 < log₂|ξ| + j < 1.
    let j_lo = (-hi_xi.log2() - 1.0).floor() as i32 + 1;
    let j_hi = (-lo_xi.log2() + 1.0).ceil() as i32 - 1;
    j_lo..=j_hi
}

/// `ℱ^{−1}(φ_j ℱg)`.
pub fn lp_project(g: &Spectrum1, j: i32) -> Result<Vec<Complex64>> {
    let torus = g.torus();
    let range = lp_octaves(torus);
    if !range.contains(&j) {
        return Err(Error::OctaveOutOfRange { j, lo: *range.start(), hi: *range.end() });
    }
    Ok(g.apply(|k| lp_weight(j, torus.frequency(k))))
}
