//! One-dimensional pieces: smooth dyadic frequency projections, the dyadic
//! Hardy–Littlewood maximal function and Fejér oscillation.

use twoparam::kernels::maximal::dyadic_widths;
use twoparam::kernels::torus1::l2;
use twoparam::kernels::{hl_maximal, lp_octaves, lp_project, osc_fejer_1d, Spectrum1, Torus1};
use twoparam::numeric::{complex_gaussian, trial_rng};
use twoparam::oscillation::LacunarySeq;

pub fn run() -> twoparam::Result<()> {
    let torus = Torus1::new(16, 256)?;
    let mut rng = trial_rng(9, 0);
    let samples: Vec<_> = (0..torus.len()).map(|_| complex_gaussian(&mut rng)).collect();
    let g = Spectrum1::from_spatial(torus, &samples)?;

    for j in lp_octaves(torus) {
        println!("octave {j:>2}: ‖P_j g‖ = {:.4}", l2(&lp_project(&g, j)?));
    }
    let m = hl_maximal(&samples, torus, -4..=4);
    println!("‖g‖ = {:.4}, ‖M g‖ = {:.4}", l2(&samples), m.iter().map(|v| v * v).sum::<f64>().sqrt());
    let r = osc_fejer_1d(&g, &dyadic_widths(8), &LacunarySeq::powers_of_two(3)?)?;
    println!("Fejér oscillation ratio: {:.4}", r.ratio);
    Ok(())
}

#[allow(dead_code)]
fn main() -> twoparam::Result<()> {
    run()
}
