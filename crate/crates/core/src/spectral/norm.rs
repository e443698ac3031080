//! Empirical lower bounds for the `ℓ²` operator norms of the maximal and
//! oscillation operators of a rectangle family.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::grid::{real_norm, Spectrum2};
use super::masks::MaskFamily;
use super::operators::{maximal_op, osc_op};
use crate::error::{Error, Result};
use crate::numeric::{complex_gaussian, trial_rng};
use crate::oscillation::LacunarySeq;

#[derive(Debug, Clone)]
pub enum OperatorMode {
    Maximal,
    Oscillation(LacunarySeq),
}

#[derive(Debug, Clone)]
pub struct NormEstimate {
    pub best_ratio: f64,
    /// Unit-norm spectrum attaining `best_ratio`.
    pub witness: Spectrum2,
}

/// Greedy single-bin perturbations tried after each random start.
pub const ASCENT_STEPS: usize = 16;

/// `‖Op f‖₂ / ‖f‖₂`, or 0 for `f = 0`.
pub fn operator_ratio(f: &Spectrum2, masks: &MaskFamily, mode: &OperatorMode) -> f64 {
    let norm = f.norm();
    if norm == 0.0 {
        return 0.0;
    }
    let out = match mode {
        OperatorMode::Maximal => maximal_op(f, masks),
        OperatorMode::Oscillation(n) => osc_op(f, masks, n),
    };
    real_norm(&out) / norm
}

/// Single bins at every frequency of the set and at the edges of every
/// rectangle around it.
fn probe_bins(masks: &MaskFamily) -> Vec<(i64, i64)> {
    let (m1, m2) = masks.n_max();
    let mut out = Vec::new();
    for &(p1, p2) in masks.lambda_bins() {
        out.push((p1, p2));
        for n1 in 0..=m1 {
            for n2 in 0..=m2 {
                let (r1, r2) = masks.radius(n1, n2);
                for (d1, d2) in [(r1, 0), (0, r2), (r1, r2), (r1 + 1, 0), (0, r2 + 1)] {
                    out.push((p1 + d1, p2 + d2));
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn support_bins(masks: &MaskFamily) -> Vec<(i64, i64)> {
    let grid = masks.grid();
    grid.axis_bins(0)
        .flat_map(|k1| grid.axis_bins(1).map(move |k2| (k1, k2)))
        .filter(|&(k1, k2)| masks.contains(0, 0, k1, k2))
        .collect()
}

fn ascend(
    masks: &MaskFamily,
    mode: &OperatorMode,
    support: &[(i64, i64)],
    seed: u64,
    trial: u64,
) -> (f64, Spectrum2) {
    let grid = masks.grid();
    let mut rng = trial_rng(seed, trial);
    let mut f = Spectrum2::zeros(grid);
    for &(k1, k2) in support {
        f.set(k1, k2, complex_gaussian(&mut rng));
    }
    f.normalize();
    let mut best = operator_ratio(&f, masks, mode);
    for _ in 0..ASCENT_STEPS {
        let (k1, k2) = support[rng.random_range(0..support.len())];
        let mut g = f.clone();
        g.set(k1, k2, g.get(k1, k2) + complex_gaussian(&mut rng) * 0.5);
        g.normalize();
        let r = operator_ratio(&g, masks, mode);
        if r > best {
            best = r;
            f = g;
        }
    }
    (best, f)
}

/// Best ratio over single-bin probes and `trials` random unit spectra on the
/// level-zero rectangles, each refined by greedy ascent. Reproducible under
/// `seed`; ties keep the earliest candidate.
pub fn norm_estimate(masks: &MaskFamily, mode: &OperatorMode, trials: u64, seed: u64) -> Result<NormEstimate> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let grid = masks.grid();
    let probes: Vec<(f64, Spectrum2)> = probe_bins(masks)
        .into_par_iter()
        .map(|(k1, k2)| {
            let mut f = Spectrum2::single_bin(grid, k1, k2, Complex64::new(1.0, 0.0));
            f.normalize();
            (operator_ratio(&f, masks, mode), f)
        })
        .collect();
    let support = support_bins(masks);
    let randoms: Vec<(f64, Spectrum2)> = if support.is_empty() {
        Vec::new()
    } else {
        (0..trials)
            .into_par_iter()
            .map(|t| ascend(masks, mode, &support, seed, t))
            .collect()
    };
    let mut best = NormEstimate { best_ratio: 0.0, witness: Spectrum2::zeros(grid) };
    for (r, f) in probes.into_iter().chain(randoms) {
        if r > best.best_ratio {
            best = NormEstimate { best_ratio: r, witness: f };
        }
    }
    Ok(best)
}
