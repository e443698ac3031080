//! A two-parameter sequence that converges without being bounded, and the
//! oscillation seminorm tools around it.

use twoparam::oscillation::{
    converges_diag, lemma3_check, osc_2d, sup_abs, to_array, unbounded_convergent, witness_windows, LacunarySeq,
    RegionSplit,
};

pub fn run() -> twoparam::Result<()> {
    for truncation in [16, 256, 4096] {
        let a = unbounded_convergent(truncation);
        let windows = LacunarySeq::powers_of_two(13)?.truncated(truncation).expect("N_1 = 1");
        println!(
            "N = {truncation:>4}: osc = {}  sup|a| = {}  converges = {}",
            osc_2d(&a, &windows)?,
            sup_abs(&a),
            converges_diag(&a, 0.5)
        );
    }

    // A checkerboard has large oscillation; split it into four regions.
    let board = to_array(&twoparam::oscillation::FnField::new((33, 33), |i, j| {
        num_complex::Complex64::new(((i + j) % 2) as f64, 0.0)
    }));
    let windows = LacunarySeq::powers_of_two(6)?;
    let r = lemma3_check(&board, &windows, RegionSplit::new(4, 8)?)?;
    println!("checkerboard: osc = {:.4} ≤ {:.4} (4·sup + region terms)", r.lhs, r.rhs);
    if let Some(w) = witness_windows(&board, 0.5)? {
        println!("witness windows with oscillation ≥ 1/2: {:?}", w.terms());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> twoparam::Result<()> {
    run()
}
