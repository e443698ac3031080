//! Rectangle multipliers around a rational frequency set: the maximal and
//! oscillation operators, variation counts and square functions.

use twoparam::numeric::trial_rng;
use twoparam::oscillation::LacunarySeq;
use twoparam::spectral::freq::{axis_set, scaled_rational_set};
use twoparam::spectral::grid::{real_norm, Spectrum2, TorusGrid2};
use twoparam::spectral::{build_masks, maximal_op, norm_estimate, osc_op, square_functions, variation_sums, OperatorMode};

pub fn run() -> twoparam::Result<()> {
    let (values, q) = scaled_rational_set(1)?;
    let set = axis_set(&values, q)?;
    let grid = TorusGrid2::new(q, 1, 16 * q as usize, 8)?;
    let masks = build_masks(grid, &set)?;
    println!("Λ = {:?} on Q = {:?}, grid {:?}, n_max {:?}", set.points(), set.q(), grid.len(), masks.n_max());

    let mut rng = trial_rng(3, 0);
    let (r1, r2) = masks.radius(0, 0);
    let centres = masks.lambda_bins().to_vec();
    let f = Spectrum2::random_on(grid, &mut rng, |k1, k2| {
        centres.iter().any(|&(c1, c2)| (k1 - c1).abs() <= r1 + 1 && (k2 - c2).abs() <= r2)
    });
    let windows = LacunarySeq::powers_of_two(4)?;
    println!("‖M f‖ / ‖f‖   = {:.4}", real_norm(&maximal_op(&f, &masks)) / f.norm());
    println!("‖osc f‖ / ‖f‖ = {:.4}", real_norm(&osc_op(&f, &masks, &windows)) / f.norm());
    println!("square functions / ‖f‖ = {:?}", square_functions(&f, &masks).ratios);
    println!("variation counts: {:?}", variation_sums(&masks));

    let est = norm_estimate(&masks, &OperatorMode::Maximal, 4, 11)?;
    println!("maximal norm estimate: {:.4}", est.best_ratio);
    Ok(())
}

#[allow(dead_code)]
fn main() -> twoparam::Result<()> {
    run()
}
