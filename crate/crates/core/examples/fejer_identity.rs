//! On spectra living on even dyadic annuli in one coordinate and odd annuli
//! in the other, cutting off to `A_{n1} × A_{n2}` is a convolution with a
//! combination of Fejér kernels.

use twoparam::experiments::commands::random_parity_spectrum;
use twoparam::kernels::{fejer_combination_exact, fejer_identity_check, parity_masks, DyadicScalePair};
use twoparam::spectral::grid::TorusGrid2;

pub fn run() -> twoparam::Result<()> {
    let grid = TorusGrid2::new(64, 64, 256, 256)?;
    let pm = parity_masks(grid);
    let counts: Vec<usize> = pm.masks.iter().map(|m| m.iter().filter(|&&v| v == 1).count()).collect();
    println!("bins per parity class (00, 01, 10, 11): {counts:?}");

    let f = random_parity_spectrum(grid, 5, 0);
    for (n1, n2) in [(0, 0), (1, 2), (3, 1), (4, 4)] {
        let r = fejer_identity_check(&f, n1, n2)?;
        println!("n = ({n1}, {n2}): relative error {:.2e}", r.max_rel_err);
    }

    let (d, _) = DyadicScalePair::new(2).exact();
    let flat = (0..=16).all(|i| fejer_combination_exact(d, d * twoparam::kernels::Exact::new(i, 16)) == 1.into());
    println!("2F(2D) − F(D) is exactly 1 on [0, D] for D = {d}: {flat}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> twoparam::Result<()> {
    run()
}
