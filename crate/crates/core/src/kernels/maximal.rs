//! Circular box averages, their dyadic maximal function, and oscillation of
//! Fejér means on the circle.

use std::ops::RangeInclusive;

use num_complex::Complex64;
use rayon::prelude::*;

use super::torus1::{l2, Spectrum1};
use super::{fejer_transform, Torus1};
use crate::error::{Error, Result};
use crate::oscillation::{osc_1d, LacunarySeq};

/// Circular average of `g` over the `2r + 1` samples centred at each point,
/// through one prefix-sum pass. Windows covering the whole circle average
/// every sample once.
pub fn box_average(g: &[Complex64], r: usize) -> Vec<Complex64> {
    let l = g.len();
    if l == 0 {
        return Vec::new();
    }
    if 2 * r + 1 >= l {
        let mean = g.iter().sum::<Complex64>() / l as f64;
        return vec![mean; l];
    }
    let mut prefix = Vec::with_capacity(l + 1);
    prefix.push(Complex64::new(0.0, 0.0));
    for (i, z) in g.iter().enumerate() {
        prefix.push(prefix[i] + z);
    }
    let total = prefix[l];
    // Σ_{i ≤ j < i + len} g_j with wrap-around.
    let range = |start: usize, len: usize| {
        let end = start + len;
        if end <= l {
            prefix[end] - prefix[start]
        } else {
            total - prefix[start] + prefix[end - l]
        }
    };
    let width = 2 * r + 1;
    (0..l)
        .map(|i| range((i + l - r) % l, width) / width as f64)
        .collect()
}

/// Sample radius of the interval `[−2^n, 2^n]` on `torus`.
pub fn dyadic_radius(torus: Torus1, n: i32) -> usize {
    (2f64.powi(n) / torus.spacing()).floor() as usize
}

/// `sup_n |M_{2^n} g|` over the exponents in `scales`.
pub fn hl_maximal(g: &[Complex64], torus: Torus1, scales: RangeInclusive<i32>) -> Vec<f64> {
    let mut out = vec![0.0_f64; g.len()];
    for n in scales {
        let avg = box_average(g, dyadic_radius(torus, n));
        for (o, a) in out.iter_mut().zip(&avg) {
            *o = o.max(a.norm());
        }
    }
    out
}

/// `σ_d * g`, where `ℱσ_d` is the triangle of half-width `d`.
pub fn fejer_smooth(g: &Spectrum1, d: f64) -> Vec<Complex64> {
    let torus = g.torus();
    g.apply(|k| fejer_transform(d, torus.frequency(k)))
}

/// Triangle half-widths `2^{−n}` for `n = 0..count`.
pub fn dyadic_widths(count: usize) -> Vec<f64> {
    (0..count).map(|n| 2f64.powi(-(n as i32))).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct OscFejerReport {
    /// `‖osc‖₂ / ‖g‖₂`, or 0 when `g = 0`.
    pub ratio: f64,
    pub pointwise: Vec<f64>,
}

/// Pointwise oscillation of `n ↦ σ_{widths[n]} * g` along `windows`.
pub fn osc_fejer_1d(g: &Spectrum1, widths: &[f64], windows: &LacunarySeq) -> Result<OscFejerReport> {
    if windows.last() >= widths.len() {
        return Err(Error::WindowOutOfRange {
            endpoint: windows.last(),
            last: widths.len().saturating_sub(1),
        });
    }
    let family: Vec<Vec<Complex64>> = widths.par_iter().map(|&d| fejer_smooth(g, d)).collect();
    let l = g.torus().len();
    let pointwise = (0..l)
        .map(|j| {
            let b: Vec<Complex64> = family.iter().map(|f| f[j]).collect();
            osc_1d(&b, windows)
        })
        .collect::<Result<Vec<f64>>>()?;
    let gnorm = l2(&g.to_spatial());
    let onorm = pointwise.iter().map(|v| v * v).sum::<f64>().sqrt();
    let ratio = if gnorm == 0.0 { 0.0 } else { onorm / gnorm };
    Ok(OscFejerReport { ratio, pointwise })
}
