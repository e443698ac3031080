//! The decay estimate `|ℱσ_{s_n}(ξ) − ℱK_{2^n}(ξ)| ≲ min{1, |2^nξ|^δ, |2^nξ|^{−δ}}`
//! with triangle half-width `s_n = 2^{−n}`, which puts `σ_{s_n}` at the
//! spatial scale `2^n` of the box kernel.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use super::{box_transform, fejer_transform};
use crate::error::{Error, Result};

/// Uniform sweep `ξ_i = ξ_max·i/points`, `i = 0..=points`. Both transforms
/// are even, so negative frequencies add nothing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XiSweep {
    pub xi_max: f64,
    pub points: usize,
}

impl XiSweep {
    pub fn new(xi_max: f64, points: usize) -> Self {
        Self { xi_max, points }
    }

    pub fn refined(&self, factor: usize) -> Self {
        Self { xi_max: self.xi_max, points: self.points * factor }
    }

    pub fn xi(&self, i: usize) -> f64 {
        self.xi_max * i as f64 / self.points as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecayReport {
    pub sup_ratio: f64,
    pub argmax_n: i32,
    pub argmax_xi: f64,
}

/// Ratio at one point; `0/0` at `ξ = 0` counts as 0.
pub fn decay_ratio(n: i32, delta: f64, xi: f64) -> f64 {
    let scale = 2f64.powi(n);
    let num = (fejer_transform(1.0 / scale, xi) - box_transform(scale, xi)).abs();
    let t = (scale * xi).abs();
    if t == 0.0 {
        return 0.0;
    }
    let den = 1f64.min(t.powf(delta)).min(t.powf(-delta));
    num / den
}

pub fn decay_check(n_range: RangeInclusive<i32>, delta: f64, sweep: XiSweep) -> Result<DecayReport> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidArgument(format!("delta must lie in (0, 1], got {delta}")));
    }
    if sweep.points == 0 || !(sweep.xi_max > 0.0) {
        return Err(Error::InvalidArgument("empty frequency sweep".into()));
    }
    let per_n: Vec<DecayReport> = n_range
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let mut best = DecayReport { sup_ratio: 0.0, argmax_n: n, argmax_xi: 0.0 };
            for i in 0..=sweep.points {
                let xi = sweep.xi(i);
                let r = decay_ratio(n, delta, xi);
                if r > best.sup_ratio {
                    best = DecayReport { sup_ratio: r, argmax_n: n, argmax_xi: xi };
                }
            }
            best
        })
        .collect();
    Ok(per_n
        .into_iter()
        .reduce(|a, b| if b.sup_ratio > a.sup_ratio { b } else { a })
        .unwrap_or(DecayReport { sup_ratio: 0.0, argmax_n: 0, argmax_xi: 0.0 }))
}
