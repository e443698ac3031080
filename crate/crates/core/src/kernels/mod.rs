//! Fejér and box kernels, dyadic parity decompositions, Hardy–Littlewood
//! averages, Littlewood–Paley pieces, and the Fejér-versus-box decay estimate.

pub mod decay;
pub mod lp;
pub mod maximal;
pub mod parity;
pub mod torus1;

use num_rational::Ratio;

pub use decay::{decay_check, DecayReport, XiSweep};
pub use lp::{lp_octaves, lp_profile, lp_project};
pub use maximal::{fejer_smooth, hl_maximal, osc_fejer_1d};
pub use parity::{annulus_index, fejer_identity_check, parity_masks, FejerIdentityReport};
pub use torus1::{Spectrum1, Torus1};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// `σ_D(x) = D⁻¹ (sin(πDx)/(πx))²`
    Fejer,
    /// `K_D(x) = (2D)⁻¹ 1_{[−D, D]}(x)`
    Box,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernel1D {
    pub kind: KernelKind,
    pub d: f64,
}

impl Kernel1D {
    pub fn fejer(d: f64) -> Self {
        Self { kind: KernelKind::Fejer, d }
    }

    pub fn boxcar(d: f64) -> Self {
        Self { kind: KernelKind::Box, d }
    }

    pub fn transform(&self, xi: f64) -> f64 {
        match self.kind {
            KernelKind::Fejer => fejer_transform(self.d, xi),
            KernelKind::Box => box_transform(self.d, xi),
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        match self.kind {
            KernelKind::Fejer => fejer_kernel(self.d, x),
            KernelKind::Box => {
                if x.abs() <= self.d {
                    0.5 / self.d
                } else {
                    0.0
                }
            }
        }
    }
}

/// `max(0, 1 − |ξ|/D)`.
pub fn fejer_transform(d: f64, xi: f64) -> f64 {
    (1.0 - xi.abs() / d).max(0.0)
}

/// `sin(2πDξ)/(2πDξ)`, equal to 1 at `ξ = 0`.
pub fn box_transform(d: f64, xi: f64) -> f64 {
    let t = 2.0 * std::f64::consts::PI * d * xi;
    if t == 0.0 {
        1.0
    } else {
        t.sin() / t
    }
}

/// `σ_D(x)`, with the limit value `D` at the origin.
pub fn fejer_kernel(d: f64, x: f64) -> f64 {
    if x == 0.0 {
        return d;
    }
    let s = (std::f64::consts::PI * d * x).sin() / (std::f64::consts::PI * x);
    s * s / d
}

pub type Exact = Ratio<i128>;

/// Exact triangle `max(0, 1 − |ξ|/D)`.
pub fn fejer_transform_exact(d: Exact, xi: Exact) -> Exact {
    let zero = Exact::from_integer(0);
    let v = Exact::from_integer(1) - (if xi < zero { -xi } else { xi }) / d;
    if v < zero {
        zero
    } else {
        v
    }
}

/// `2·ℱσ_{2D}(ξ) − ℱσ_D(ξ)`: 1 on `|ξ| ≤ D`, 0 on `|ξ| ≥ 2D`, linear between.
pub fn fejer_combination(d: f64, xi: f64) -> f64 {
    2.0 * fejer_transform(2.0 * d, xi) - fejer_transform(d, xi)
}

pub fn fejer_combination_exact(d: Exact, xi: Exact) -> Exact {
    let two = Exact::from_integer(2);
    two * fejer_transform_exact(two * d, xi) - fejer_transform_exact(d, xi)
}

/// The pair `D¹_n = 2^{−2⌈(n+1)/2⌉}`, `D²_n = 2^{−2⌊(n+1)/2⌋−1}`, stored as
/// exponents of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicScalePair {
    pub n: i32,
}

impl DyadicScalePair {
    pub fn new(n: i32) -> Self {
        Self { n }
    }

    pub fn exponents(&self) -> (i32, i32) {
        let half_floor = (self.n + 1).div_euclid(2);
        let half_ceil = -(-(self.n + 1)).div_euclid(2);
        (-2 * half_ceil, -2 * half_floor - 1)
    }

    pub fn d1(&self) -> f64 {
        2f64.powi(self.exponents().0)
    }

    pub fn d2(&self) -> f64 {
        2f64.powi(self.exponents().1)
    }

    pub fn exact(&self) -> (Exact, Exact) {
        let (e1, e2) = self.exponents();
        (pow2_exact(e1), pow2_exact(e2))
    }
}

/// `2^e` as an exact rational; `|e| < 126`.
pub fn pow2_exact(e: i32) -> Exact {
    if e >= 0 {
        Exact::from_integer(1i128 << e)
    } else {
        Exact::new(1, 1i128 << (-e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transforms_at_simple_points() {
        assert_eq!(fejer_transform(3.0, 0.0), 1.0);
        assert_eq!(fejer_transform(1.0, 0.5), 0.5);
        assert_eq!(fejer_transform(1.0, 2.0), 0.0);
        assert_eq!(box_transform(2.0, 0.0), 1.0);
        assert!(box_transform(1.0, 0.5).abs() < 1e-15);
    }

    #[test]
    fn scale_pairs() {
        assert_eq!(DyadicScalePair::new(0).exponents(), (-2, -1));
        assert_eq!(DyadicScalePair::new(1).exponents(), (-2, -3));
        assert_eq!(DyadicScalePair::new(2).exponents(), (-4, -3));
        assert_eq!(DyadicScalePair::new(-1).exponents(), (0, -1));
        assert_eq!(DyadicScalePair::new(-2).exponents(), (0, 1));
        assert_eq!(DyadicScalePair::new(2).exact().0, Exact::new(1, 16));
    }

    #[test]
    fn combination_is_flat_then_vanishes() {
        let d = Exact::new(1, 8);
        for num in 0..=32 {
            let xi = Exact::new(num, 128);
            let v = fejer_combination_exact(d, xi);
            if xi <= d {
                assert_eq!(v, Exact::from_integer(1));
            } else if xi >= d * 2 {
                assert_eq!(v, Exact::from_integer(0));
            }
        }
    }

    #[test]
    fn fejer_kernel_is_nonnegative_with_unit_peak_scale() {
        for i in -200..=200 {
            assert!(fejer_kernel(0.7, i as f64 * 0.13) >= 0.0);
        }
        assert_eq!(fejer_kernel(0.7, 0.0), 0.7);
    }
}
