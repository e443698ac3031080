//! Distance between the Fejér and box multipliers at matching scales,
//! measured against `min(1, |2^n ξ|, |2^n ξ|^{-1})`.

use twoparam::kernels::decay::decay_ratio;
use twoparam::kernels::{decay_check, XiSweep};

pub fn run() -> twoparam::Result<()> {
    let sweep = XiSweep::new(4.0, 200_000);
    for n in [0, 3, 6, 10] {
        let r = decay_check(n..=n, 1.0, sweep)?;
        println!("n = {n:>2}: sup ratio {:.6} at ξ = {:.6}", r.sup_ratio, r.argmax_xi);
    }
    for t in [0.01, 0.25, 0.5, 0.75, 1.3, 10.25] {
        println!("t = 2^n ξ = {t:>5}: ratio {:.6}", decay_ratio(0, 1.0, t));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> twoparam::Result<()> {
    run()
}
