use ndarray::Array2;
use num_complex::Complex64;
use proptest::prelude::*;
use twoparam::dyadic_rm::{
    decompose, rm_check_1d, rm_check_2d, rm_check_2d_every_anchor, rm_rhs_1d, rm_rhs_2d, DyadicInterval, Seq1, Seq2,
};

const R2: f64 = 2.0 * std::f64::consts::SQRT_2;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn level_sum(s: u32, x: &dyn Fn(usize) -> Complex64) -> f64 {
    (0..=s)
        .map(|i| {
            let step = 1usize << i;
            (1..=(1usize << (s - i)))
                .map(|j| (x(j * step) - x((j - 1) * step)).norm().powi(2))
                .sum::<f64>()
                .sqrt()
        })
        .sum()
}

fn rhs_1d_oracle(b: &[Complex64], s: u32) -> f64 {
    R2 * level_sum(s, &|n| b[n])
}

fn rhs_2d_oracle(a: &Array2<Complex64>, s1: u32, s2: u32, n1: usize, n2: usize) -> f64 {
    let mut block = 0.0;
    for i1 in 0..=s1 {
        for i2 in 0..=s2 {
            let mut inner = 0.0;
            for j1 in 1..=(1usize << (s1 - i1)) {
                for j2 in 1..=(1usize << (s2 - i2)) {
                    // Cell by cell rather than by the telescoped corners.
                    let mut acc = c(0.0, 0.0);
                    for u in (j1 - 1) << i1..j1 << i1 {
                        for v in (j2 - 1) << i2..j2 << i2 {
                            acc += a[(u + 1, v + 1)] - a[(u + 1, v)] - a[(u, v + 1)] + a[(u, v)];
                        }
                    }
                    inner += acc.norm_sqr();
                }
            }
            block += inner.sqrt();
        }
    }
    8.0 * block + R2 * level_sum(s1, &|n| a[(n, n2)]) + R2 * level_sum(s2, &|n| a[(n1, n)]) + a[(n1, n2)].norm()
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(a, b)| c(a, b))
}

#[test]
fn dyadic_interval_rejects_bad_input() {
    assert!(DyadicInterval::starting_at(6, 2).is_err());
    assert!(decompose(3, 3, 4).is_err());
    assert!(decompose(0, 17, 4).is_err());
    let d = decompose(0, 16, 4).unwrap();
    assert_eq!(d.parts().len(), 1);
}

#[test]
fn one_dimensional_bound_is_attained_by_a_step() {
    // b = (0, …, 0, 1): only the last difference at each level is 1.
    let b = Seq1::from_fn(3, |n| c((n == 8) as u8 as f64, 0.0)).unwrap();
    assert_eq!(rm_rhs_1d(&b, 0).unwrap(), R2 * 4.0);
    assert_eq!(rm_check_1d(&b, 0).unwrap().lhs, 0.0);
}

proptest! {
    #[test]
    fn decomposition_partitions_the_interval(s in 0u32..20, x in any::<u64>(), y in any::<u64>()) {
        let top = 1u64 << s;
        let (m, n) = (x % top, 1 + y % top);
        prop_assume!(m < n);
        let d = decompose(m, n, s).unwrap();
        prop_assert!(d.is_valid());
        let total: u64 = d.parts().iter().map(|p| p.len()).sum();
        prop_assert_eq!(total, n - m);
        prop_assert!(d.parts().iter().all(|p| p.start() % p.len() == 0 && p.end() <= n));
        prop_assert!(d.level_multiplicities().iter().all(|&k| k <= 2));
    }

    #[test]
    fn rhs_1d_matches_oracle(s in 0u32..7, vals in prop::collection::vec(complex(), 129), n0 in any::<usize>()) {
        let len = (1usize << s) + 1;
        let b = Seq1::new(s, vals[..len].to_vec()).unwrap();
        let n0 = n0 % (1 << s);
        let r = rm_check_1d(&b, n0).unwrap();
        let oracle = rhs_1d_oracle(&vals[..len], s);
        prop_assert!((r.rhs - oracle).abs() <= 1e-10 * oracle.max(1.0));
        prop_assert!(r.holds);
    }

    #[test]
    fn rhs_2d_matches_cellwise_oracle(
        s1 in 0u32..4, s2 in 0u32..4,
        vals in prop::collection::vec(complex(), 81),
        n1 in any::<usize>(), n2 in any::<usize>(),
    ) {
        let (d1, d2) = ((1usize << s1) + 1, (1usize << s2) + 1);
        let a = Array2::from_shape_fn((d1, d2), |(i, j)| vals[i * 9 + j]);
        let seq = Seq2::new(s1, s2, a.clone()).unwrap();
        let (n1, n2) = (n1 % (d1 - 1), n2 % (d2 - 1));
        let oracle = rhs_2d_oracle(&a, s1, s2, n1, n2);
        let rhs = rm_rhs_2d(&seq, n1, n2).unwrap();
        prop_assert!((rhs - oracle).abs() <= 1e-10 * oracle.max(1.0));
        let r = rm_check_2d(&seq, n1, n2).unwrap();
        prop_assert!(r.holds, "{r:?}");
        let every = rm_check_2d_every_anchor(&seq);
        let e = every[(n1, n2)];
        prop_assert_eq!((e.lhs, e.holds), (r.lhs, r.holds));
        prop_assert!((e.rhs - r.rhs).abs() <= 1e-12 * r.rhs);
    }

    #[test]
    fn two_dimensional_bound_is_translation_sensitive_only_through_the_anchor(
        s1 in 0u32..3, s2 in 0u32..3, shift in complex(), vals in prop::collection::vec(complex(), 25),
    ) {
        // Adding a constant leaves every difference term unchanged.
        let (d1, d2) = ((1usize << s1) + 1, (1usize << s2) + 1);
        let a = Array2::from_shape_fn((d1, d2), |(i, j)| vals[i * 5 + j]);
        let b = a.mapv(|z| z + shift);
        let (sa, sb) = (Seq2::new(s1, s2, a.clone()).unwrap(), Seq2::new(s1, s2, b.clone()).unwrap());
        let da = rm_rhs_2d(&sa, 0, 0).unwrap() - a[(0, 0)].norm();
        let db = rm_rhs_2d(&sb, 0, 0).unwrap() - b[(0, 0)].norm();
        prop_assert!((da - db).abs() <= 1e-9 * da.max(1.0));
    }
}
