//! Maximal and oscillation operators of the rectangle family, its variation
//! constants, and the associated square functions.

use std::ops::RangeInclusive;

use ndarray::{Array2, Zip};
use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::Spectrum2;
use super::masks::MaskFamily;
use crate::oscillation::LacunarySeq;

/// `ℱ^{−1}(mask(n1, n2)·ℱf)` for every `(n1, n2) ∈ [0, n_max]²`.
pub struct FamilyValues {
    n_max: (u32, u32),
    values: Vec<Array2<Complex64>>,
}

impl FamilyValues {
    pub fn compute(f: &Spectrum2, masks: &MaskFamily) -> Self {
        let values = masks
            .indices()
            .into_par_iter()
            .map(|(n1, n2)| masks.apply(f, n1, n2))
            .collect();
        Self { n_max: masks.n_max(), values }
    }

    /// Value at `(n1, n2)`, clamped to the stabilized range.
    pub fn get(&self, n1: usize, n2: usize) -> &Array2<Complex64> {
        let a = n1.min(self.n_max.0 as usize);
        let b = n2.min(self.n_max.1 as usize);
        &self.values[a * (self.n_max.1 as usize + 1) + b]
    }
}

fn elementwise_max(mut a: Array2<f64>, b: Array2<f64>) -> Array2<f64> {
    Zip::from(&mut a).and(&b).for_each(|x, &y| *x = x.max(y));
    a
}

/// Pointwise `sup |ℱ^{−1}(mask(n1, n2)·ℱf)|` over `n1 ∈ range1`, `n2 ∈ range2`.
/// Indices past `n_max` are clamped, which is exact by stabilization.
pub fn maximal_op_range(
    f: &Spectrum2,
    masks: &MaskFamily,
    range1: RangeInclusive<usize>,
    range2: RangeInclusive<usize>,
) -> Array2<f64> {
    let (m1, m2) = masks.n_max();
    let clamp = |r: &RangeInclusive<usize>, m: u32| {
        let lo = (*r.start()).min(m as usize) as u32;
        let hi = (*r.end()).min(m as usize) as u32;
        lo..=hi
    };
    let (c1, c2) = (clamp(&range1, m1), clamp(&range2, m2));
    let pairs: Vec<(u32, u32)> = c1.flat_map(|a| c2.clone().map(move |b| (a, b))).collect();
    let zero = Array2::<f64>::zeros(masks.grid().len());
    pairs
        .into_par_iter()
        .map(|(n1, n2)| masks.apply(f, n1, n2).mapv(|z| z.norm()))
        .reduce(|| zero.clone(), elementwise_max)
}

/// Pointwise supremum over the whole family.
pub fn maximal_op(f: &Spectrum2, masks: &MaskFamily) -> Array2<f64> {
    let (m1, m2) = masks.n_max();
    maximal_op_range(f, masks, 0..=m1 as usize, 0..=m2 as usize)
}

/// Pointwise two-parameter oscillation seminorm of the family
/// `(n1, n2) ↦ ℱ^{−1}(mask(n1, n2)·ℱf)` along `windows`. Windows reaching past
/// the stabilization index are evaluated exactly by clamping.
pub fn osc_op(f: &Spectrum2, masks: &MaskFamily, windows: &LacunarySeq) -> Array2<f64> {
    let family = FamilyValues::compute(f, masks);
    osc_from_family(&family, masks, windows)
}

pub fn osc_from_family(family: &FamilyValues, masks: &MaskFamily, windows: &LacunarySeq) -> Array2<f64> {
    let (m1, m2) = masks.n_max();
    let (m1, m2) = (m1 as usize, m2 as usize);
    let mut total = Array2::<f64>::zeros(masks.grid().len());
    for (lo, hi) in windows.windows() {
        let anchor = family.get(lo, lo);
        let mut sup = Array2::<f64>::zeros(total.dim());
        for n1 in lo.min(m1)..=hi.min(m1) {
            for n2 in lo.min(m2)..=hi.min(m2) {
                let v = family.get(n1, n2);
                Zip::from(&mut sup).and(v).and(anchor).for_each(|s, &x, &a| *s = s.max((x - a).norm()));
            }
        }
        Zip::from(&mut total).and(&sup).for_each(|t, &s| *t += s * s);
    }
    total.mapv_inplace(f64::sqrt);
    total
}

/// Sup over bins of the four variation sums of an indicator family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VariationBounds {
    /// `Σ_{n1,n2 ≥ 1} |Δ_{n1,n2} m|`
    pub b11: u32,
    /// `Σ_{n1 ≥ 1} |Δ¹_{n1,0} m|`
    pub b1: u32,
    /// `Σ_{n2 ≥ 1} |Δ²_{0,n2} m|`
    pub b2: u32,
    /// `|m_{0,0}|`
    pub b0: u32,
}

impl VariationBounds {
    pub fn max(&self) -> u32 {
        self.b11.max(self.b1).max(self.b2).max(self.b0)
    }
}

fn indicator_table(masks: &MaskFamily, k1: i64, k2: i64) -> Array2<i32> {
    let (m1, m2) = masks.n_max();
    Array2::from_shape_fn((m1 as usize + 1, m2 as usize + 1), |(a, b)| {
        masks.contains(a as u32, b as u32, k1, k2) as i32
    })
}

/// Bins of one axis at which some indicator can change: one representative
/// of every run on which the distance bands to all `λ` are constant.
fn axis_breakpoints(masks: &MaskFamily, axis: usize) -> Vec<i64> {
    let grid = masks.grid();
    let l = if axis == 0 { grid.len().0 } else { grid.len().1 } as i64;
    let top = if axis == 0 { masks.n_max().0 } else { masks.n_max().1 };
    let mut centres: Vec<i64> =
        masks.lambda_bins().iter().map(|p| if axis == 0 { p.0 } else { p.1 }).collect();
    centres.sort_unstable();
    centres.dedup();
    let mut out = vec![-l / 2];
    for p in centres {
        for n in 0..=top {
            let r = if axis == 0 { masks.radius(n, 0).0 } else { masks.radius(0, n).1 };
            out.extend([p - r, p + r, p - r - 1, p + r + 1]);
        }
    }
    let mut out: Vec<i64> = out.into_iter().map(|k| (k + l / 2).rem_euclid(l) - l / 2).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn bin_variation(masks: &MaskFamily, k1: i64, k2: i64) -> VariationBounds {
    let m = indicator_table(masks, k1, k2);
    let (d1, d2) = m.dim();
    let mut v = VariationBounds { b0: m[(0, 0)].unsigned_abs(), ..Default::default() };
    for a in 1..d1 {
        v.b1 += (m[(a, 0)] - m[(a - 1, 0)]).unsigned_abs();
        for b in 1..d2 {
            v.b11 += (m[(a, b)] - m[(a, b - 1)] - m[(a - 1, b)] + m[(a - 1, b - 1)]).unsigned_abs();
        }
    }
    for b in 1..d2 {
        v.b2 += (m[(0, b)] - m[(0, b - 1)]).unsigned_abs();
    }
    v
}

fn sup_variation(masks: &MaskFamily, bins: Vec<(i64, i64)>) -> VariationBounds {
    bins.into_par_iter()
        .map(|(k1, k2)| bin_variation(masks, k1, k2))
        .reduce(VariationBounds::default, |x, y| VariationBounds {
            b11: x.b11.max(y.b11),
            b1: x.b1.max(y.b1),
            b2: x.b2.max(y.b2),
            b0: x.b0.max(y.b0),
        })
}

/// Sup over bins of the variation sums; differences past `n_max` vanish.
/// Each indicator table is constant between axis breakpoints, so one bin per
/// run suffices and grids far larger than memory are handled exactly.
pub fn variation_sums(masks: &MaskFamily) -> VariationBounds {
    let rows = axis_breakpoints(masks, 0);
    let cols = axis_breakpoints(masks, 1);
    let bins = rows.iter().flat_map(|&k1| cols.iter().map(move |&k2| (k1, k2))).collect();
    sup_variation(masks, bins)
}

/// Same sums over every bin of the grid.
pub fn variation_sums_full_scan(masks: &MaskFamily) -> VariationBounds {
    let grid = masks.grid();
    let bins = grid
        .axis_bins(0)
        .flat_map(|k1| grid.axis_bins(1).map(move |k2| (k1, k2)))
        .collect();
    sup_variation(masks, bins)
}

/// Difference multipliers of the family, in FFT order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Difference {
    /// `Δ_{n1,n2} m` for `n1, n2 ≥ 1`
    Double(u32, u32),
    /// `Δ¹_{n1,0} m` for `n1 ≥ 1`
    First(u32),
    /// `Δ²_{0,n2} m` for `n2 ≥ 1`
    Second(u32),
}

pub fn difference_multiplier(masks: &MaskFamily, which: Difference) -> Array2<i32> {
    let grid = masks.grid();
    let m = |a: u32, b: u32, k1: i64, k2: i64| masks.contains(a, b, k1, k2) as i32;
    Array2::from_shape_fn(grid.len(), |(i1, i2)| {
        let (k1, k2) = grid.bin_of(i1, i2);
        match which {
            Difference::Double(a, b) => {
                m(a, b, k1, k2) - m(a, b - 1, k1, k2) - m(a - 1, b, k1, k2) + m(a - 1, b - 1, k1, k2)
            }
            Difference::First(a) => m(a, 0, k1, k2) - m(a - 1, 0, k1, k2),
            Difference::Second(b) => m(0, b, k1, k2) - m(0, b - 1, k1, k2),
        }
    })
}

/// `ℱ^{−1}(multiplier · ℱf)`.
pub fn apply_integer_multiplier(f: &Spectrum2, multiplier: &Array2<i32>) -> Array2<Complex64> {
    let mut g = f.clone();
    Zip::from(g.coeffs_mut()).and(multiplier).for_each(|z, &m| *z *= m as f64);
    g.to_spatial()
}

#[derive(Debug, Clone)]
pub struct SquareFunctions {
    pub s: Array2<f64>,
    pub s1: Array2<f64>,
    pub s2: Array2<f64>,
    /// `‖S f‖₂ / ‖f‖₂`, `‖S¹ f‖₂ / ‖f‖₂`, `‖S² f‖₂ / ‖f‖₂` (0 when `f = 0`).
    pub ratios: [f64; 3],
}

fn square_sum(f: &Spectrum2, masks: &MaskFamily, diffs: Vec<Difference>) -> Array2<f64> {
    let zero = Array2::<f64>::zeros(masks.grid().len());
    let acc = diffs
        .into_par_iter()
        .map(|d| {
            apply_integer_multiplier(f, &difference_multiplier(masks, d)).mapv(|z| z.norm_sqr())
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(zero, |a, b| a + b);
    acc.mapv(f64::sqrt)
}

/// The square functions built from double and single mask differences.
pub fn square_functions(f: &Spectrum2, masks: &MaskFamily) -> SquareFunctions {
    let (m1, m2) = masks.n_max();
    let double: Vec<_> = (1..=m1)
        .flat_map(|a| (1..=m2).map(move |b| Difference::Double(a, b)))
        .collect();
    let s = square_sum(f, masks, double);
    let s1 = square_sum(f, masks, (1..=m1).map(Difference::First).collect());
    let s2 = square_sum(f, masks, (1..=m2).map(Difference::Second).collect());
    let fnorm = f.norm();
    let ratio = |a: &Array2<f64>| {
        if fnorm == 0.0 {
            0.0
        } else {
            super::grid::real_norm(a) / fnorm
        }
    };
    let ratios = [ratio(&s), ratio(&s1), ratio(&s2)];
    SquareFunctions { s, s1, s2, ratios }
}
