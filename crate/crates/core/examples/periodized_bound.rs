//! The supremum over large rectangles of a sum of modulated pieces, compared
//! with the ℓ² mass of the pieces.

use twoparam::spectral::freq::{product_set, scaled_rational_set, FrequencySet};
use twoparam::spectral::grid::TorusGrid2;
use twoparam::spectral::periodized::periodized_trials;

pub fn run() -> twoparam::Result<()> {
    let (values, q) = scaled_rational_set(1)?;
    let set = product_set(&values, q)?;
    let origin = FrequencySet::new(q, q, vec![(0, 0)])?;
    let grid = TorusGrid2::new(q, q, 256, 96)?;
    let base = periodized_trials(grid, &origin, 8, 1, Some((1, 1)))?;
    let full = periodized_trials(grid, &set, 8, 1, Some((1, 1)))?;
    println!("|Λ| = 1: ratio {:.4}", base.ratio);
    println!("|Λ| = {}: ratio {:.4} ({:.2}× baseline)", set.len(), full.ratio, full.ratio / base.ratio);
    Ok(())
}

#[allow(dead_code)]
fn main() -> twoparam::Result<()> {
    run()
}
