//! Evidence for the periodization inequality
//! `‖sup_{U^{11}} |Σ_λ e^{2πi⟨λ,x⟩} ℱ^{−1}(1_{R_{n1,n2}} ℱf_λ)|‖² ≤ C Σ_λ ‖f_λ‖²`
//! on the discrete torus.

use ndarray::{Array2, Zip};
use num_complex::Complex64;
use serde::Serialize;

use super::freq::FrequencySet;
use super::grid::{Spectrum2, TorusGrid2};
use super::masks::{axis_radius, build_masks, MaskFamily};
use crate::error::{Error, Result};
use crate::fft;
use crate::numeric::{complex_gaussian, trial_rng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeriodizedReport {
    pub lhs_sq: f64,
    pub rhs: f64,
    /// `lhs_sq / rhs`, or 0 when every input vanishes.
    pub ratio: f64,
    /// Threshold `(S1, S2)` of the `U^{11}` range.
    pub w: (u64, u64),
    /// True when `S_r` reaches past the stabilization index on some axis, so
    /// the family over `U^{11}` is constant.
    pub degenerate: bool,
}

/// `S_r = 2^{⌈log₂ log₂(Q_r √|Λ|)⌉}`, with `s_r = 0` whenever the inner
/// logarithm is at most 1.
pub fn default_threshold(q: (u64, u64), count: usize) -> (u64, u64) {
    let s = |q: u64| {
        let inner = (q as f64 * (count.max(1) as f64).sqrt()).log2();
        if inner <= 1.0 {
            1
        } else {
            1u64 << inner.log2().ceil() as u32
        }
    };
    (s(q.0), s(q.1))
}

/// True iff every nonzero coefficient sits in the origin box `A_0 × A_0`.
fn check_support(f: &Spectrum2) -> Result<()> {
    let q = f.grid().q();
    for (k1, k2, _) in f.nonzero_bins() {
        if (2 * k1).unsigned_abs() >= q.0 || (2 * k2).unsigned_abs() >= q.1 {
            return Err(Error::SupportViolation(k1, k2));
        }
    }
    Ok(())
}

pub struct PeriodizedSetup {
    family: MaskFamily,
    w: (u64, u64),
}

impl PeriodizedSetup {
    /// `w` overrides the default threshold from [`default_threshold`].
    pub fn new(grid: TorusGrid2, set: &FrequencySet, w: Option<(u64, u64)>) -> Result<Self> {
        let family = build_masks(grid, set)?;
        let w = w.unwrap_or_else(|| default_threshold(grid.q(), set.len()));
        if w.0 == 0 || w.1 == 0 {
            return Err(Error::InvalidArgument("threshold must be positive".into()));
        }
        Ok(Self { family, w })
    }

    pub fn family(&self) -> &MaskFamily {
        &self.family
    }

    pub fn w(&self) -> (u64, u64) {
        self.w
    }

    pub fn is_degenerate(&self) -> bool {
        let stab = self.family.stabilization();
        self.w.0 >= stab.0 as u64 || self.w.1 >= stab.1 as u64
    }

    fn range(&self, axis: usize) -> std::ops::RangeInclusive<u32> {
        let top = if axis == 0 { self.family.n_max().0 } else { self.family.n_max().1 };
        let w = if axis == 0 { self.w.0 } else { self.w.1 };
        (w.min(top as u64) as u32)..=top
    }

    /// Evaluates both sides for one spectrum per frequency, in the set's order.
    pub fn evaluate(&self, spectra: &[Spectrum2]) -> Result<PeriodizedReport> {
        let grid = self.family.grid();
        let lambdas = self.family.lambda_bins();
        if spectra.len() != lambdas.len() {
            return Err(Error::ShapeMismatch { expected: (lambdas.len(), 1), got: (spectra.len(), 1) });
        }
        for f in spectra {
            if f.grid() != grid {
                return Err(Error::ShapeMismatch { expected: grid.len(), got: f.grid().len() });
            }
            check_support(f)?;
        }
        let rhs: f64 = spectra.iter().map(|f| f.norm().powi(2)).sum();
        let (l1, l2) = grid.len();
        let q = grid.q();
        let mut sup = Array2::<f64>::zeros((l1, l2));
        for n1 in self.range(0) {
            for n2 in self.range(1) {
                let (r1, r2) = (axis_radius(q.0, n1), axis_radius(q.1, n2));
                let mut g = Array2::<Complex64>::zeros((l1, l2));
                for (f, &(p1, p2)) in spectra.iter().zip(lambdas) {
                    for (k1, k2, z) in f.nonzero_bins() {
                        if k1.abs() <= r1 && k2.abs() <= r2 {
                            g[(fft::bin_index(k1 + p1, l1), fft::bin_index(k2 + p2, l2))] += z;
                        }
                    }
                }
                fft::inverse_2d(&mut g);
                Zip::from(&mut sup).and(&g).for_each(|s, z| *s = s.max(z.norm()));
            }
        }
        let lhs_sq: f64 = sup.iter().map(|v| v * v).sum();
        let ratio = if rhs == 0.0 { 0.0 } else { lhs_sq / rhs };
        Ok(PeriodizedReport { lhs_sq, rhs, ratio, w: self.w, degenerate: self.is_degenerate() })
    }

    /// Random complex Gaussian spectra on the origin box, one per frequency.
    pub fn random_spectra(&self, seed: u64, trial: u64) -> Vec<Spectrum2> {
        let grid = self.family.grid();
        let q = grid.q();
        let (r1, r2) = (axis_radius(q.0, 0), axis_radius(q.1, 0));
        let mut rng = trial_rng(seed, trial);
        (0..self.family.lambda_bins().len())
            .map(|_| {
                let mut f = Spectrum2::zeros(grid);
                for k1 in -r1..=r1 {
                    for k2 in -r2..=r2 {
                        f.set(k1, k2, complex_gaussian(&mut rng));
                    }
                }
                f
            })
            .collect()
    }
}

/// Single-shot form of [`PeriodizedSetup::evaluate`].
pub fn periodized_bound_test(
    grid: TorusGrid2,
    set: &FrequencySet,
    spectra: &[Spectrum2],
    w: Option<(u64, u64)>,
) -> Result<PeriodizedReport> {
    PeriodizedSetup::new(grid, set, w)?.evaluate(spectra)
}

/// Largest ratio over `trials` random inputs; ties keep the earliest trial.
pub fn periodized_trials(
    grid: TorusGrid2,
    set: &FrequencySet,
    trials: u64,
    seed: u64,
    w: Option<(u64, u64)>,
) -> Result<PeriodizedReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let setup = PeriodizedSetup::new(grid, set, w)?;
    let mut best: Option<PeriodizedReport> = None;
    for t in 0..trials {
        let r = setup.evaluate(&setup.random_spectra(seed, t))?;
        if best.is_none_or(|b| r.ratio > b.ratio) {
            best = Some(r);
        }
    }
    Ok(best.expect("trials >= 1"))
}
