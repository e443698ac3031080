use std::collections::BTreeMap;

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::config::{ExperimentConfig, Layout};
use super::report::RunReport;
use crate::dyadic_rm::{rm_check_1d, rm_check_2d, rm_exhaustive_two_valued, Seq1, Seq2};
use crate::error::{Error, Result};
use crate::kernels::parity::annulus_parity;
use crate::kernels::{decay_check, fejer_identity_check, XiSweep};
use crate::numeric::{complex_gaussian, trial_rng};
use crate::oscillation::{
    lemma3_check, osc_2d, read_field_csv, sup_abs, unbounded_convergent, window_sup, witness_windows, to_array,
    LacunarySeq, RegionSplit,
};
use crate::spectral::freq::{axis_set, gen_rationals, product_set, scaled_rational_set, FrequencySet};
use crate::spectral::grid::{Spectrum2, TorusGrid2};
use crate::spectral::masks::{build_masks, ceil_log2, MaskFamily};
use crate::spectral::norm::{norm_estimate, OperatorMode};

pub const RM_COLUMNS: &[&str] = &["kind", "s1", "s2", "cases", "violations", "max_ratio"];

/// Seeded random checks of both inequalities, grouped by level.
pub fn rm_check(cfg: &ExperimentConfig) -> Result<RunReport> {
    let mut report = RunReport::new("rm-check", cfg.echo(), RM_COLUMNS);
    if cfg.s_max > 12 {
        return Err(Error::Config("s-max above 12 is not supported for rm-check".into()));
    }
    let outcomes: Vec<[(u32, u32, bool, f64); 2]> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, t);
            let s = rng.random_range(cfg.s_min..=cfg.s_max);
            let b = Seq1::from_fn(s, |_| complex_gaussian(&mut rng)).expect("bounded level");
            let n0 = rng.random_range(0..1usize << s);
            let r1 = rm_check_1d(&b, n0).expect("anchor in range");
            let s1 = rng.random_range(cfg.s_min..=cfg.s_max);
            let s2 = rng.random_range(cfg.s_min..=cfg.s_max);
            let a = Seq2::from_fn(s1, s2, |_| complex_gaussian(&mut rng)).expect("bounded level");
            let (m1, m2) = (rng.random_range(0..1usize << s1), rng.random_range(0..1usize << s2));
            let r2 = rm_check_2d(&a, m1, m2).expect("anchor in range");
            [(s, 0, r1.holds, r1.ratio()), (s1, s2, r2.holds, r2.ratio())]
        })
        .collect();
    let mut groups: BTreeMap<(u8, u32, u32), (u64, u64, f64)> = BTreeMap::new();
    for pair in &outcomes {
        for (kind, &(s1, s2, holds, ratio)) in pair.iter().enumerate() {
            let g = groups.entry((kind as u8, s1, s2)).or_insert((0, 0, 0.0));
            g.0 += 1;
            g.1 += (!holds) as u64;
            g.2 = g.2.max(ratio);
        }
    }
    for ((kind, s1, s2), (cases, violations, max_ratio)) in groups {
        let name = if kind == 0 { "1d" } else { "2d" };
        report.violations += violations;
        report.push(vec![name.into(), s1.into(), s2.into(), cases.into(), violations.into(), max_ratio.into()]);
    }
    if cfg.exhaustive {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        for (name, values) in [("exhaustive01", (zero, one)), ("exhaustive-pm1", (-one, one))] {
            let r = rm_exhaustive_two_valued(2, 2, values)?;
            report.violations += r.violations;
            report.push(vec![
                name.into(),
                2u32.into(),
                2u32.into(),
                r.checks.into(),
                r.violations.into(),
                r.max_ratio.into(),
            ]);
        }
    }
    Ok(report)
}

pub const GROWTH_COLUMNS: &[&str] =
    &["s", "Q1", "Q2", "lambda_count", "loglog1", "loglog2", "ratio_max", "ratio_osc"];

/// `ln ln(q √count)`.
pub fn loglog(q: u64, count: usize) -> f64 {
    (q as f64 * (count as f64).sqrt()).ln().ln()
}

/// `4^{s+1}·ℛ_s` laid out in the plane, on circumference `q` (or its natural
/// value).
pub fn scaled_set(s: u32, layout: Layout, q: Option<u64>) -> Result<FrequencySet> {
    let (values, natural) = scaled_rational_set(s)?;
    let q = match q {
        Some(q) if q % natural != 0 => {
            return Err(Error::Config(format!("q = {q} is not a multiple of {natural}")));
        }
        Some(q) => q,
        None => natural,
    };
    match layout {
        Layout::Axis => axis_set(&values, q),
        Layout::Product => product_set(&values, q),
    }
}

/// Smallest grid of integer bandwidth `B` (so `L_r = B·Q_r`, even) on which
/// the rectangle family of `set` is well defined, within `cell_budget`.
pub fn fit_grid(set: &FrequencySet, layout: Layout, cell_budget: usize) -> Result<MaskFamily> {
    let (q1, q2) = set.q();
    for b in 1u64.. {
        let l1 = (b * q1) as usize;
        if l1 % 2 != 0 {
            continue;
        }
        let (l2, grid_q2) = match layout {
            Layout::Axis => (2, q2),
            Layout::Product => {
                let l2 = (b * q2) as usize;
                if l2 % 2 != 0 {
                    continue;
                }
                (l2, q2)
            }
        };
        if l1.saturating_mul(l2) > cell_budget {
            return Err(Error::Infeasible(format!(
                "no separating grid within {cell_budget} cells for Q = ({q1}, {q2})"
            )));
        }
        let grid = TorusGrid2::new(q1, grid_q2, l1, l2)?;
        match build_masks(grid, set) {
            Ok(f) => return Ok(f),
            Err(Error::NotSeparated(..)) => continue,
            Err(e) => return Err(e),
        }
    }
    unreachable!("bandwidth search is unbounded")
}

fn family_for(cfg: &ExperimentConfig, set: &FrequencySet) -> Result<MaskFamily> {
    match cfg.grid {
        Some((l1, l2)) => {
            if l1.saturating_mul(l2) > cfg.cell_budget {
                return Err(Error::Infeasible(format!("grid {l1}x{l2} exceeds the cell budget")));
            }
            build_masks(TorusGrid2::new(set.q().0, set.q().1, l1, l2)?, set)
        }
        None => fit_grid(set, cfg.layout, cfg.cell_budget),
    }
}

/// Empirical maximal and oscillation norms over the scaled rational sets.
pub fn growth_study(cfg: &ExperimentConfig) -> Result<RunReport> {
    let mut report = RunReport::new("growth-study", cfg.echo(), GROWTH_COLUMNS);
    let windows = LacunarySeq::geometric(1, cfg.tau, cfg.windows)?;
    // Validate every level before spending time on any of them.
    let mut cases = Vec::new();
    for s in cfg.s_min..=cfg.s_max {
        let set = scaled_set(s, cfg.layout, cfg.q)?;
        let family = family_for(cfg, &set)?;
        cases.push((s, set, family));
    }
    if cfg.trials == 0 {
        return Ok(report);
    }
    for (s, set, family) in cases {
        let max = norm_estimate(&family, &OperatorMode::Maximal, cfg.trials, cfg.seed)?;
        let osc = norm_estimate(&family, &OperatorMode::Oscillation(windows.clone()), cfg.trials, cfg.seed)?;
        let (q1, q2) = set.q();
        let (l1, l2) = family.grid().len();
        report.note(&format!("grid_s{s}"), format!("{l1}x{l2}"));
        report.push(vec![
            s.into(),
            q1.into(),
            q2.into(),
            set.len().into(),
            loglog(q1, set.len()).into(),
            loglog(q2, set.len()).into(),
            max.best_ratio.into(),
            osc.best_ratio.into(),
        ]);
    }
    Ok(report)
}

pub const FEJER_COLUMNS: &[&str] = &["trial", "n1", "n2", "max_rel_err"];
pub const FEJER_TOLERANCE: f64 = 1e-8;

/// Random spectra on even annuli × odd annuli.
pub fn random_parity_spectrum(grid: TorusGrid2, seed: u64, trial: u64) -> Spectrum2 {
    let (q1, q2) = grid.q();
    let mut rng = trial_rng(seed, trial);
    Spectrum2::random_on(grid, &mut rng, |k1, k2| {
        annulus_parity(k1, q1) == Some(0) && annulus_parity(k2, q2) == Some(1)
    })
}

/// Mask route against Fejér-combination route on random admissible spectra.
pub fn fejer_check(cfg: &ExperimentConfig) -> Result<RunReport> {
    let mut report = RunReport::new("fejer-check", cfg.echo(), FEJER_COLUMNS);
    let (l1, l2) = cfg.grid.unwrap_or((256, 256));
    let q = cfg.q.map(|q| (q, q)).unwrap_or(((l1 / 4).max(1) as u64, (l2 / 4).max(1) as u64));
    let grid = TorusGrid2::new(q.0, q.1, l1, l2)?;
    let (top1, top2) = (ceil_log2(q.0) + 1, ceil_log2(q.1) + 1);
    let rows: Vec<(u32, u32, f64)> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let f = random_parity_spectrum(grid, cfg.seed, t);
            let mut rng = trial_rng(cfg.seed ^ 0x5eed, t);
            let (n1, n2) = (rng.random_range(0..=top1), rng.random_range(0..=top2));
            fejer_identity_check(&f, n1, n2).map(|r| (n1, n2, r.max_rel_err))
        })
        .collect::<Result<_>>()?;
    let mut worst = 0.0_f64;
    for (t, (n1, n2, err)) in rows.into_iter().enumerate() {
        worst = worst.max(err);
        report.violations += (err > FEJER_TOLERANCE) as u64;
        report.push(vec![t.into(), n1.into(), n2.into(), err.into()]);
    }
    report.note("max_rel_err", worst);
    Ok(report)
}

pub const OSC_COLUMNS: &[&str] = &[
    "case", "index", "dim", "windows", "osc", "sup_abs", "lemma3_lhs", "lemma3_rhs", "lemma3_holds", "witness_terms",
];

fn osc_row(
    report: &mut RunReport,
    case: &str,
    index: u64,
    a: &Array2<Complex64>,
    windows: &LacunarySeq,
    split: RegionSplit,
    eps: f64,
) -> Result<()> {
    let osc = osc_2d(a, windows)?;
    let l3 = lemma3_check(a, windows, split)?;
    let witness = witness_windows(a, eps)?;
    let mut witness_terms = 0usize;
    if let Some(w) = &witness {
        witness_terms = w.terms().len();
        let lacunary = w.terms().windows(2).all(|p| p[1] >= 2 * p[0]);
        let deep = w.windows().all(|(lo, hi)| window_sup(a, lo, hi) >= eps);
        report.violations += (!(lacunary && deep)) as u64;
    }
    report.violations += (!l3.holds) as u64;
    report.push(vec![
        case.into(),
        index.into(),
        a.nrows().min(a.ncols()).into(),
        windows.num_windows().into(),
        osc.into(),
        sup_abs(a).into(),
        l3.lhs.into(),
        l3.rhs.into(),
        l3.holds.into(),
        witness_terms.into(),
    ]);
    Ok(())
}

/// Oscillation of the input array (or the unbounded convergent sequence) plus
/// randomized checks of the region split and of the witness construction.
pub fn osc_check(cfg: &ExperimentConfig) -> Result<RunReport> {
    let mut report = RunReport::new("osc-check", cfg.echo(), OSC_COLUMNS);
    let (a, case) = match &cfg.input {
        Some(path) => {
            let file = std::fs::File::open(path)
                .map_err(|e| Error::Config(format!("cannot open {}: {e}", path.display())))?;
            (read_field_csv(std::io::BufReader::new(file))?, "input")
        }
        None => (to_array(&unbounded_convergent(cfg.truncation)), "unbounded-convergent"),
    };
    let last = a.nrows().min(a.ncols()).saturating_sub(1);
    let windows = LacunarySeq::geometric(1, cfg.tau, cfg.windows)?
        .truncated(last)
        .filter(|w| w.num_windows() > 0)
        .ok_or_else(|| Error::Config(format!("input of size {last} admits no lacunary window")))?;
    let mid = windows.terms()[windows.terms().len() / 2];
    osc_row(&mut report, case, 0, &a, &windows, RegionSplit::new(mid, mid)?, cfg.eps)?;

    let randoms: Vec<(Array2<Complex64>, LacunarySeq, RegionSplit)> = (0..cfg.trials)
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, t);
            let d = rng.random_range(4..=40usize);
            let a = Array2::from_shape_fn((d, d), |_| complex_gaussian(&mut rng) * rng.random_range(0.0..3.0));
            let tau = rng.random_range(1.1..3.0);
            let first = rng.random_range(1..=3usize);
            let full = LacunarySeq::geometric(first, tau, 8).expect("valid parameters");
            let n = full.truncated(d - 1).expect("first term fits");
            let n = if n.num_windows() == 0 {
                LacunarySeq::new(vec![1, d - 1], 1.5).expect("valid pair")
            } else {
                n
            };
            let split = RegionSplit::new(rng.random_range(1..d), rng.random_range(1..d)).expect("positive");
            (a, n, split)
        })
        .collect();
    for (t, (a, n, split)) in randoms.iter().enumerate() {
        osc_row(&mut report, "random", t as u64, a, n, *split, cfg.eps)?;
    }
    Ok(report)
}

pub const GEN_SET_COLUMNS: &[&str] = &["s", "value"];

/// The reduced rationals of each level, as `a/q`.
pub fn gen_set(cfg: &ExperimentConfig) -> Result<RunReport> {
    let mut report = RunReport::new("gen-set", cfg.echo(), GEN_SET_COLUMNS);
    for s in cfg.s_min..=cfg.s_max {
        for r in gen_rationals(s)? {
            report.push(vec![s.into(), format!("{}/{}", r.numer(), r.denom()).into()]);
        }
    }
    Ok(report)
}

pub const DECAY_COLUMNS: &[&str] = &["n", "sup_ratio", "argmax_xi", "coarse_sup_ratio", "rel_change"];
pub const DECAY_STABILITY: f64 = 0.01;

/// Per-scale decay ratios on the configured sweep and on half of it.
pub fn decay(cfg: &ExperimentConfig) -> Result<RunReport> {
    let mut report = RunReport::new("decay-check", cfg.echo(), DECAY_COLUMNS);
    let fine = XiSweep::new(cfg.xi_max, cfg.xi_points);
    let coarse = XiSweep::new(cfg.xi_max, (cfg.xi_points / 2).max(1));
    let mut sup = 0.0_f64;
    for n in cfg.n_min..=cfg.n_max {
        let f = decay_check(n..=n, cfg.delta, fine)?;
        let c = decay_check(n..=n, cfg.delta, coarse)?;
        let rel = if f.sup_ratio == 0.0 { 0.0 } else { (f.sup_ratio - c.sup_ratio).abs() / f.sup_ratio };
        sup = sup.max(f.sup_ratio);
        report.violations += (!f.sup_ratio.is_finite() || rel > DECAY_STABILITY) as u64;
        report.push(vec![n.into(), f.sup_ratio.into(), f.argmax_xi.into(), c.sup_ratio.into(), rel.into()]);
    }
    report.note("sup_ratio", sup);
    Ok(report)
}
