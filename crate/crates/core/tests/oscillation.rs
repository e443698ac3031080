use ndarray::Array2;
use num_complex::Complex64;
use proptest::prelude::*;
use twoparam::oscillation::{
    lemma3_check, osc_1d, osc_2d, osc_mu, read_field_csv, to_array, unbounded_convergent, window_sup,
    witness_windows, write_field_csv, LacunarySeq, Region, RegionSplit,
};

fn field(d: usize, vals: &[(f64, f64)]) -> Array2<Complex64> {
    Array2::from_shape_fn((d, d), |(i, j)| {
        let (re, im) = vals[(i * d + j) % vals.len()];
        Complex64::new(re, im)
    })
}

fn osc_oracle(a: &Array2<Complex64>, terms: &[usize]) -> f64 {
    let mut total = 0.0;
    for w in terms.windows(2) {
        let anchor = a[(w[0], w[0])];
        let mut best: f64 = 0.0;
        for ((i, j), v) in a.indexed_iter() {
            if (w[0]..=w[1]).contains(&i) && (w[0]..=w[1]).contains(&j) {
                best = best.max((v - anchor).norm());
            }
        }
        total += best * best;
    }
    total.sqrt()
}

fn lacunary(d: usize) -> impl Strategy<Value = LacunarySeq> {
    (1usize..4, 1.2f64..3.0, 2usize..8).prop_filter_map("fits", move |(first, tau, k)| {
        LacunarySeq::geometric(first, tau, k).ok()?.truncated(d - 1).filter(|w| w.num_windows() > 0)
    })
}

#[test]
fn lacunary_validation() {
    assert!(LacunarySeq::new(vec![1, 2, 3], 2.0).is_err());
    assert!(LacunarySeq::new(vec![0, 2], 2.0).is_err());
    assert!(LacunarySeq::new(vec![1, 2, 4, 8], 2.0).is_ok());
    let g = LacunarySeq::geometric(1, 1.5, 6).unwrap();
    assert!(g.terms().windows(2).all(|p| p[1] as f64 >= 1.5 * p[0] as f64));
}

#[test]
fn out_of_range_windows_are_errors() {
    let a = field(5, &[(1.0, 0.0)]);
    let w = LacunarySeq::powers_of_two(4).unwrap();
    assert!(osc_2d(&a, &w).is_err());
    assert!(osc_2d(&a, &w.truncated(4).unwrap()).is_ok());
}

#[test]
fn field_csv_round_trip() {
    let a = field(6, &[(0.25, -1.0), (3.0, 0.5), (-2.0, 7.125)]);
    let mut buf = Vec::new();
    write_field_csv(&a, &mut buf).unwrap();
    let back = read_field_csv(buf.as_slice()).unwrap();
    assert_eq!(back, a);
    assert!(read_field_csv("n1,n2,re\n0,x,1\n".as_bytes()).is_err());
}

#[test]
fn counterexample_is_unbounded_but_oscillation_free() {
    for t in [8, 100, 1000] {
        let a = unbounded_convergent(t);
        let arr = to_array(&a);
        let w = LacunarySeq::powers_of_two(12).unwrap().truncated(t).unwrap();
        assert_eq!(osc_2d(&a, &w).unwrap(), 0.0);
        assert_eq!(osc_oracle(&arr, w.terms()), 0.0);
        assert_eq!(arr[(0, t)].re, t as f64);
    }
}

proptest! {
    #[test]
    fn osc_matches_oracle(d in 4usize..24, vals in prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), 1..64), seed in 0usize..100) {
        let a = field(d, &vals);
        let w = LacunarySeq::geometric(1 + seed % 2, 2.0, 6).unwrap().truncated(d - 1).unwrap();
        prop_assume!(w.num_windows() > 0);
        let ours = osc_2d(&a, &w).unwrap();
        prop_assert!((ours - osc_oracle(&a, w.terms())).abs() <= 1e-12 * ours.max(1.0));
    }

    #[test]
    fn osc_1d_matches_oracle(vals in prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), 20)) {
        let b: Vec<Complex64> = vals.iter().map(|&(r, i)| Complex64::new(r, i)).collect();
        let w = LacunarySeq::powers_of_two(5).unwrap().truncated(19).unwrap();
        let mut total = 0.0;
        for (lo, hi) in w.windows() {
            let m = b[lo..=hi].iter().map(|v| (v - b[lo]).norm()).fold(0.0, f64::max);
            total += m * m;
        }
        prop_assert!((osc_1d(&b, &w).unwrap() - total.sqrt()).abs() <= 1e-12 * total.sqrt().max(1.0));
    }

    #[test]
    fn region_split_bound(
        d in 4usize..20,
        vals in prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), 1..50),
        w1 in 1usize..20, w2 in 1usize..20,
        n in lacunary(20),
    ) {
        let a = field(d, &vals);
        let n = match n.truncated(d - 1).filter(|n| n.num_windows() > 0) { Some(n) => n, None => return Ok(()) };
        let split = RegionSplit::new(w1, w2).unwrap();
        let r = lemma3_check(&a, &n, split).unwrap();
        prop_assert!(r.holds, "{r:?}");
        for region in Region::ALL {
            prop_assert!(osc_mu(&a, &n, split, region).unwrap() >= 0.0);
        }
    }

    #[test]
    fn witness_windows_are_lacunary_and_deep(
        d in 3usize..30,
        vals in prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 1..40),
        eps in 0.1f64..3.0,
    ) {
        let a = field(d, &vals);
        if let Some(w) = witness_windows(&a, eps).unwrap() {
            prop_assert_eq!(w.terms()[0], 1);
            prop_assert!(w.terms().windows(2).all(|p| p[1] >= 2 * p[0]));
            for (lo, hi) in w.windows() {
                prop_assert!(window_sup(&a, lo, hi) >= eps);
            }
        }
    }
}
