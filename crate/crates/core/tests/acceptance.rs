//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use twoparam::dyadic_rm::{decompose, rm_exhaustive_two_valued};
use twoparam::experiments::commands::random_parity_spectrum;
use twoparam::experiments::{rm_check, Command as Cmd, ExperimentConfig};
use twoparam::kernels::{
    decay_check, fejer_combination_exact, fejer_identity_check, parity_masks, DyadicScalePair, Exact, XiSweep,
};
use twoparam::numeric::{complex_gaussian, trial_rng};
use twoparam::oscillation::{
    lemma3_check, osc_2d, sup_abs, unbounded_convergent, window_sup, witness_windows, LacunarySeq, RegionSplit,
};
use twoparam::spectral::freq::{axis_set, product_set, scaled_rational_set, FrequencySet};
use twoparam::spectral::grid::{spatial_norm, Spectrum2, TorusGrid2};
use twoparam::spectral::masks::{build_masks, BinMask};
use twoparam::spectral::periodized::periodized_trials;
use twoparam::spectral::{apply_multiplier, variation_sums};

/// Largest decay ratio measured on the first run (n = 0, ξ = 1/2).
const DECAY_C0: f64 = 1.0;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn rm_inequalities() -> Outcome {
    let start = Instant::now();
    let cfg = ExperimentConfig::resolve(
        Cmd::RmCheck,
        None,
        &[("trials".into(), "10000".into()), ("s-min".into(), "0".into()), ("s-max".into(), "5".into())],
    )
    .map_err(|e| e.to_string())?;
    let random = rm_check(&cfg).map_err(|e| e.to_string())?;
    let exhaustive = rm_exhaustive_two_valued(2, 2, (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)))
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(
        random.violations == 0 && exhaustive.violations == 0 && elapsed < Duration::from_secs(60),
        format!(
            "10000 random pairs: {} violations; {} exhaustive 0/1 arrays: {} violations, max ratio {}; {:.1} s",
            random.violations,
            exhaustive.sequences,
            exhaustive.violations,
            exhaustive.max_ratio,
            elapsed.as_secs_f64()
        ),
    )
}

fn dyadic_decomposition() -> Outcome {
    let start = Instant::now();
    let top = 1u64 << 10;
    let mut cases = 0u64;
    let mut bad = 0u64;
    for m in 0..top {
        for n in m + 1..=top {
            let d = decompose(m, n, 10).map_err(|e| e.to_string())?;
            let mut cursor = m;
            let mut per_len = [0u8; 11];
            let mut ok = true;
            for p in d.parts() {
                ok &= p.start() == cursor && p.start() % p.len() == 0;
                per_len[p.len().trailing_zeros() as usize] += 1;
                cursor = p.end();
            }
            ok &= cursor == n && per_len.iter().all(|&c| c <= 2);
            bad += (!ok) as u64;
            cases += 1;
        }
    }
    let elapsed = start.elapsed();
    check(
        bad == 0 && elapsed < Duration::from_secs(10),
        format!("{cases} intervals, {bad} failures, {:.2} s", elapsed.as_secs_f64()),
    )
}

fn lemma3() -> Outcome {
    let mut violations = 0;
    for t in 0..10_000u64 {
        let mut rng = trial_rng(31, t);
        let d = rng.random_range(3..=24usize);
        let a = Array2::from_shape_fn((d, d), |_| complex_gaussian(&mut rng) * rng.random_range(0.0..4.0));
        let tau = rng.random_range(1.05..3.0);
        let n = LacunarySeq::geometric(rng.random_range(1..=2), tau, 10)
            .map_err(|e| e.to_string())?
            .truncated(d - 1)
            .filter(|n| n.num_windows() > 0)
            .unwrap_or_else(|| LacunarySeq::new(vec![1, d - 1], 1.01).expect("two terms"));
        let split = RegionSplit::new(rng.random_range(1..=d + 2), rng.random_range(1..=d + 2)).unwrap();
        violations += (!lemma3_check(&a, &n, split).map_err(|e| e.to_string())?.holds) as u32;
    }
    check(violations == 0, format!("10000 instances, {violations} violations"))
}

fn projection_identities() -> Outcome {
    let mut worst_idem = 0.0_f64;
    let mut worst_contract = 0.0_f64;
    let mut worst_round = 0.0_f64;
    for (l1, l2) in [(16, 16), (256, 64), (64, 1024), (1024, 1024)] {
        let grid = TorusGrid2::new(l1 as u64 / 4, l2 as u64 / 2, l1, l2).map_err(|e| e.to_string())?;
        let set = FrequencySet::new(grid.q().0, grid.q().1, vec![(0, 0), (grid.q().0 as i64, 1)])
            .map_err(|e| e.to_string())?;
        let family = build_masks(grid, &set).map_err(|e| e.to_string())?;
        let f = Spectrum2::random_on(grid, &mut trial_rng(8, l1 as u64), |_, _| true);
        let (m1, m2) = family.n_max();
        for (n1, n2) in [(0, 0), (1, 2), (m1, 0), (m1, m2)] {
            let mask = family.mask(n1, n2);
            let p = apply_multiplier(&f, &mask).map_err(|e| e.to_string())?;
            let pp = apply_multiplier(&Spectrum2::from_spatial(grid, &p).unwrap(), &mask).unwrap();
            let diff = p.iter().zip(pp.iter()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
            worst_idem = worst_idem.max(diff / f.norm());
            worst_contract = worst_contract.max(spatial_norm(&p) / f.norm() - 1.0);
        }
        let x = f.to_spatial();
        let full = apply_multiplier(&f, &BinMask::full(grid.len())).unwrap();
        let diff = x.iter().zip(full.iter()).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        worst_round = worst_round.max(diff / f.norm());
    }
    check(
        worst_idem <= 1e-12 && worst_contract <= 1e-12 && worst_round <= 1e-12,
        format!(
            "‖P²f − Pf‖/‖f‖ ≤ {worst_idem:.1e}, ‖Pf‖/‖f‖ − 1 ≤ {worst_contract:.1e}, full-mask error {worst_round:.1e}"
        ),
    )
}

fn random_separated_set(seed: u64) -> FrequencySet {
    let mut rng = trial_rng(seed, 0);
    let (q1, q2) = (rng.random_range(1..9u64), rng.random_range(1..9u64));
    let mut pts: Vec<(i64, i64)> = Vec::new();
    for _ in 0..rng.random_range(1..10) {
        let p = (rng.random_range(-40..40i64), rng.random_range(-40..40i64));
        if pts.iter().all(|q| (p.0 - q.0).unsigned_abs() >= q1 || (p.1 - q.1).unsigned_abs() >= q2) {
            pts.push(p);
        }
    }
    FrequencySet::new(q1, q2, pts).expect("separated by construction")
}

fn variation_bounds() -> Outcome {
    let mut worst = 0u32;
    let mut families = 0;
    for s in 0..=3u32 {
        let (values, q) = scaled_rational_set(s).map_err(|e| e.to_string())?;
        let span = 4i64.pow(s + 1) as usize;
        // A bandwidth past the span of the set keeps it separated on the torus.
        let l1 = q as usize * (span + 2);
        let axis = axis_set(&values, q).map_err(|e| e.to_string())?;
        let family = build_masks(TorusGrid2::new(q, 1, l1, 2).unwrap(), &axis).map_err(|e| e.to_string())?;
        worst = worst.max(variation_sums(&family).max());
        families += 1;
        if s <= 1 {
            let prod = product_set(&values, q).map_err(|e| e.to_string())?;
            let family = build_masks(TorusGrid2::new(q, q, l1, l1).unwrap(), &prod).map_err(|e| e.to_string())?;
            worst = worst.max(variation_sums(&family).max());
            families += 1;
        }
    }
    for seed in 0..100 {
        let set = random_separated_set(seed);
        let (q1, q2) = set.q();
        let family = build_masks(TorusGrid2::new(q1, q2, 2 * 84 * q1 as usize, 2 * 84 * q2 as usize).unwrap(), &set)
            .map_err(|e| e.to_string())?;
        worst = worst.max(variation_sums(&family).max());
        families += 1;
    }
    check(worst <= 1, format!("{families} families, largest variation sum {worst}"))
}

fn fejer_identity() -> Outcome {
    let mut worst = 0.0_f64;
    let mut nonzero = 0;
    let mut cases = 0;
    for (l1, l2) in [(256, 256), (4096, 64), (64, 4096)] {
        let grid = TorusGrid2::new(l1 as u64 / 4, l2 as u64 / 4, l1, l2).map_err(|e| e.to_string())?;
        for t in 0..6u64 {
            let f = random_parity_spectrum(grid, 17, t);
            let mut rng = trial_rng(18, t);
            let (n1, n2) = (rng.random_range(0..=5u32), rng.random_range(0..=5u32));
            let r = fejer_identity_check(&f, n1, n2).map_err(|e| e.to_string())?;
            worst = worst.max(r.max_rel_err);
            let origin = FrequencySet::new(1, 1, vec![(0, 0)]).unwrap();
            let masked = build_masks(grid, &origin).unwrap().apply(&f, n1, n2);
            nonzero += (spatial_norm(&masked) > 0.0) as u32;
            cases += 1;
        }
    }
    let mut flat = true;
    for n in -4..=12 {
        let (d1, d2) = DyadicScalePair::new(n).exact();
        for d in [d1, d2] {
            for i in -97..=97 {
                flat &= fejer_combination_exact(d, d * Exact::new(i, 97)) == Exact::from_integer(1);
            }
        }
    }
    check(
        worst <= 1e-8 && flat && nonzero > 0,
        format!("{cases} spectra ({nonzero} with nonzero projection), max relative error {worst:.1e}, exact flatness {flat}"),
    )
}

fn parity_partition() -> Outcome {
    let mut bad = 0usize;
    let mut bins = 0usize;
    for (q1, q2, l1, l2) in [(16, 16, 64, 64), (7, 40, 128, 96), (1024, 16, 4096, 64), (3, 5, 30, 50)] {
        let grid = TorusGrid2::new(q1, q2, l1, l2).map_err(|e| e.to_string())?;
        let sum = parity_masks(grid).sum();
        for ((i1, i2), &v) in sum.indexed_iter() {
            let (k1, k2) = grid.bin_of(i1, i2);
            if k1 != 0 && k2 != 0 {
                bins += 1;
                bad += (v != 1) as usize;
            }
        }
    }
    check(bad == 0, format!("{bins} off-axis bins, {bad} not covered exactly once"))
}

fn counterexample() -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0;
    for t in [1usize, 2, 3, 17, 64, 100, 1000, 2049, 4096] {
        let a = unbounded_convergent(t);
        if sup_abs(&a) != t as f64 {
            failures.push(format!("sup at {t}"));
        }
        let mut seqs = vec![LacunarySeq::powers_of_two(13).unwrap()];
        for first in 1..=3 {
            for tau in [1.1, 1.5, 2.0, 3.7] {
                seqs.push(LacunarySeq::geometric(first, tau, 20).unwrap());
            }
        }
        for n in seqs {
            let Some(n) = n.truncated(t) else { continue };
            if n.num_windows() == 0 {
                continue;
            }
            checks += 1;
            if osc_2d(&a, &n).map_err(|e| e.to_string())? != 0.0 {
                failures.push(format!("osc at {t}, {:?}", n.terms()));
            }
        }
    }
    check(failures.is_empty(), format!("{checks} window sequences, osc = 0 and sup = N exactly; failures {failures:?}"))
}

fn decay() -> Outcome {
    let sweep = XiSweep::new(4.0, 1_000_000);
    let coarse = decay_check(0..=10, 1.0, sweep).map_err(|e| e.to_string())?;
    let fine = decay_check(0..=10, 1.0, sweep.refined(2)).map_err(|e| e.to_string())?;
    let change = (fine.sup_ratio - coarse.sup_ratio).abs() / coarse.sup_ratio;
    check(
        coarse.sup_ratio.is_finite() && change < 0.01 && coarse.sup_ratio <= DECAY_C0 + 1e-9,
        format!(
            "sup ratio {} at n = {}, ξ = {}; refined {}; change {change:.1e}; C₀ = {DECAY_C0}",
            coarse.sup_ratio, coarse.argmax_n, coarse.argmax_xi, fine.sup_ratio
        ),
    )
}

fn periodized() -> Outcome {
    let (values, q) = scaled_rational_set(1).map_err(|e| e.to_string())?;
    let set = product_set(&values, q).map_err(|e| e.to_string())?;
    let origin = FrequencySet::new(q, q, vec![(0, 0)]).unwrap();
    let mut worst = 0.0_f64;
    let mut lines = Vec::new();
    for l1 in [256usize, 1024, 4096] {
        let grid = TorusGrid2::new(q, q, l1, 256).map_err(|e| e.to_string())?;
        let base = periodized_trials(grid, &origin, 4, 5, Some((1, 1))).map_err(|e| e.to_string())?;
        let full = periodized_trials(grid, &set, 4, 5, Some((1, 1))).map_err(|e| e.to_string())?;
        let rel = full.ratio / base.ratio;
        worst = worst.max(rel);
        lines.push(format!("L1={l1}: {:.3}/{:.3}", full.ratio, base.ratio));
    }
    check(worst <= 100.0, format!("{} (worst {worst:.2}× baseline)", lines.join(", ")))
}

fn witness() -> Outcome {
    let mut built = 0;
    let mut bad = 0;
    for t in 0..1000u64 {
        let mut rng = trial_rng(77, t);
        let d = rng.random_range(2..=48usize);
        let scale = rng.random_range(0.0..2.0);
        let a = Array2::from_shape_fn((d, d), |_| complex_gaussian(&mut rng) * scale);
        let eps = rng.random_range(0.05..2.0);
        if let Some(w) = witness_windows(&a, eps).map_err(|e| e.to_string())? {
            built += 1;
            let lacunary = w.terms().windows(2).all(|p| p[1] >= 2 * p[0]);
            let deep = w.windows().all(|(lo, hi)| window_sup(&a, lo, hi) >= eps);
            bad += (!(lacunary && deep)) as u32;
        }
    }
    check(bad == 0 && built > 0, format!("1000 inputs, {built} witnesses built, {bad} invalid"))
}

fn rows_of(args: &[&str], format: &str) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_twoparam"))
        .args(args)
        .args(["--format", format])
        .output()
        .map_err(|e| e.to_string())?;
    // Exit code 1 reports invariant violations; the rows are still compared.
    if !matches!(out.status.code(), Some(0 | 1)) {
        return Err(format!("{args:?} exited with {:?}", out.status.code()));
    }
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    if format == "json" {
        let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        Ok(v["rows"].to_string())
    } else {
        Ok(text)
    }
}

fn determinism() -> Outcome {
    let runs: &[&[&str]] = &[
        &["rm-check", "--trials", "500", "--seed", "9"],
        &["growth-study", "--s-max", "1", "--trials", "2"],
        &["fejer-check", "--trials", "4", "--grid", "128x128"],
        &["osc-check", "--trials", "100"],
        &["gen-set", "--s-max", "3"],
        &["decay-check", "--set", "xi-points=100000"],
    ];
    let mut differing = Vec::new();
    for args in runs {
        for format in ["csv", "json"] {
            if rows_of(args, format)? != rows_of(args, format)? {
                differing.push(format!("{} {format}", args[0]));
            }
        }
    }
    check(differing.is_empty(), format!("{} runs × 2 formats, differing: {differing:?}", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("rm-inequalities", rm_inequalities),
        ("dyadic-decomposition", dyadic_decomposition),
        ("region-split-bound", lemma3),
        ("projection-identities", projection_identities),
        ("variation-bounds", variation_bounds),
        ("fejer-identity", fejer_identity),
        ("parity-partition", parity_partition),
        ("unbounded-convergent-sequence", counterexample),
        ("decay-estimate", decay),
        ("periodized-bound", periodized),
        ("witness-construction", witness),
        ("cli-determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name} ({secs:.1} s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} ({secs:.1} s): {detail}");
            }
        }
    }
    println!("{} of {} acceptance criteria passed", 12 - failed, 12);
    if failed > 0 {
        std::process::exit(1);
    }
}
