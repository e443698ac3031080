//! Dyadic decomposition and the Rademacher–Menshov type maximal bounds.
//!
//! ```text
//! cargo run --release --example rm_inequality
//! ```

use num_complex::Complex64;
use rand::Rng;
use twoparam::dyadic_rm::{decompose, rm_check_1d, rm_check_2d, rm_exhaustive_two_valued, Seq1, Seq2};
use twoparam::numeric::{complex_gaussian, trial_rng};

pub fn run() -> twoparam::Result<()> {
    let d = decompose(5, 27, 5)?;
    let parts: Vec<String> = d.parts().iter().map(|p| format!("[{}, {})", p.start(), p.end())).collect();
    println!("[5, 27) = {}", parts.join(" ∪ "));

    let mut rng = trial_rng(7, 0);
    let b = Seq1::from_fn(6, |_| complex_gaussian(&mut rng))?;
    let r = rm_check_1d(&b, 0)?;
    println!("1d  s=6: sup = {:.4}  bound = {:.4}  ratio = {:.4}", r.lhs, r.rhs, r.ratio());

    let a = Seq2::from_fn(4, 5, |_| complex_gaussian(&mut rng))?;
    let (n1, n2) = (rng.random_range(0..16), rng.random_range(0..32));
    let r = rm_check_2d(&a, n1, n2)?;
    println!("2d  s=(4,5) anchor=({n1},{n2}): sup = {:.4}  bound = {:.4}  holds = {}", r.lhs, r.rhs, r.holds);

    let e = rm_exhaustive_two_valued(1, 1, (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)))?;
    println!(
        "every 0/1 array on 3x3: {} arrays, {} anchored checks, {} violations, worst ratio {:.4}",
        e.sequences, e.checks, e.violations, e.max_ratio
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> twoparam::Result<()> {
    run()
}
