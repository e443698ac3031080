use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Largest `s` accepted by [`gen_rationals`].
pub const MAX_RATIONAL_LEVEL: u32 = 12;

/// Reduced fractions `a/q ∈ [0, 1]` with `2^s ≤ q < 2^{s+1}`, ordered by
/// denominator, then numerator.
pub fn gen_rationals(s: u32) -> Result<Vec<Rational64>> {
    if s > MAX_RATIONAL_LEVEL {
        return Err(Error::Infeasible(format!(
            "rational level {s} exceeds {MAX_RATIONAL_LEVEL}"
        )));
    }
    let lo = 1i64 << s;
    let mut out = Vec::new();
    for q in lo..2 * lo {
        for a in 0..=q {
            if a.gcd(&q) == 1 {
                out.push(Rational64::new_raw(a, q));
            }
        }
    }
    Ok(out)
}

/// `lcm{q : 2^s ≤ q < 2^{s+1}}`, or an error on `u64` overflow.
pub fn denominator_lcm(s: u32) -> Result<u64> {
    if s > MAX_RATIONAL_LEVEL {
        return Err(Error::Infeasible(format!("rational level {s} is too large")));
    }
    let lo = 1u64 << s;
    (lo..2 * lo).try_fold(1u64, |acc, q| {
        let g = acc.gcd(&q);
        (acc / g)
            .checked_mul(q)
            .ok_or_else(|| Error::Infeasible(format!("lcm of denominators overflows u64 at s = {s}")))
    })
}

/// True iff all distinct pairs of `scale·points` are at max-metric distance ≥ 1.
pub fn check_separation(points: &[(Rational64, Rational64)], scale: Rational64) -> bool {
    let one = Rational64::from_integer(1);
    points.iter().enumerate().all(|(i, p)| {
        points[i + 1..].iter().all(|q| {
            if p == q {
                return true;
            }
            let d1 = ((p.0 - q.0) * scale).abs();
            let d2 = ((p.1 - q.1) * scale).abs();
            d1.max(d2) >= one
        })
    })
}

/// One-dimensional form: `|scale·(x − y)| ≥ 1` for all distinct pairs.
pub fn check_separation_1d(points: &[Rational64], scale: Rational64) -> bool {
    let zero = Rational64::zero();
    let pairs: Vec<_> = points.iter().map(|&p| (p, zero)).collect();
    check_separation(&pairs, scale)
}

/// A finite set `Λ ⊂ Q1⁻¹ℤ × Q2⁻¹ℤ` stored as integer numerators, with the
/// max-metric separation `max(|λ1 − λ1'|, |λ2 − λ2'|) ≥ 1` enforced on
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencySet {
    q: (u64, u64),
    points: Vec<(i64, i64)>,
}

impl FrequencySet {
    pub fn new(q1: u64, q2: u64, points: Vec<(i64, i64)>) -> Result<Self> {
        if q1 == 0 || q2 == 0 {
            return Err(Error::InvalidArgument("denominators must be positive".into()));
        }
        for (i, p) in points.iter().enumerate() {
            for q in &points[i + 1..] {
                let far1 = (p.0 - q.0).unsigned_abs() >= q1;
                let far2 = (p.1 - q.1).unsigned_abs() >= q2;
                if !(far1 || far2) {
                    return Err(Error::NotSeparated(*p, *q));
                }
            }
        }
        Ok(Self { q: (q1, q2), points })
    }

    pub fn empty(q1: u64, q2: u64) -> Result<Self> {
        Self::new(q1, q2, Vec::new())
    }

    /// Builds the set from exact rationals; `Q_r` is the lcm of the reduced
    /// denominators on axis `r`, unless a multiple is supplied in `q`.
    pub fn from_rationals(points: &[(Rational64, Rational64)], q: Option<(u64, u64)>) -> Result<Self> {
        let lcm = |f: fn(&(Rational64, Rational64)) -> Rational64| -> u64 {
            points.iter().fold(1u64, |acc, p| acc.lcm(&(f(p).denom().unsigned_abs())))
        };
        let natural = (lcm(|p| p.0), lcm(|p| p.1));
        let (q1, q2) = match q {
            Some((q1, q2)) => {
                if q1 == 0 || q2 == 0 || q1 % natural.0 != 0 || q2 % natural.1 != 0 {
                    return Err(Error::OffGrid { set: natural, grid: (q1, q2) });
                }
                (q1, q2)
            }
            None => natural,
        };
        let to_num = |r: Rational64, q: u64| -> i64 { (r * Rational64::from_integer(q as i64)).to_integer() };
        let pts = points.iter().map(|p| (to_num(p.0, q1), to_num(p.1, q2))).collect();
        Self::new(q1, q2, pts)
    }

    pub fn q(&self) -> (u64, u64) {
        self.q
    }

    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn as_rationals(&self) -> Vec<(Rational64, Rational64)> {
        self.points
            .iter()
            .map(|&(p1, p2)| (Rational64::new(p1, self.q.0 as i64), Rational64::new(p2, self.q.1 as i64)))
            .collect()
    }
}

/// `4^{s+1}·ℛ_s` as exact rationals, together with `Q = lcm` of the
/// denominators range `[2^s, 2^{s+1})`.
pub fn scaled_rational_set(s: u32) -> Result<(Vec<Rational64>, u64)> {
    let scale = Rational64::from_integer(1i64 << (2 * (s + 1)));
    let set = gen_rationals(s)?.into_iter().map(|r| r * scale).collect();
    Ok((set, denominator_lcm(s)?))
}

/// `Λ × {0}` on the first axis.
pub fn axis_set(values: &[Rational64], q: u64) -> Result<FrequencySet> {
    let pts: Vec<_> = values.iter().map(|&v| (v, Rational64::zero())).collect();
    FrequencySet::from_rationals(&pts, Some((q, 1)))
}

/// The product `Λ × Λ`.
pub fn product_set(values: &[Rational64], q: u64) -> Result<FrequencySet> {
    let pts: Vec<_> = values
        .iter()
        .flat_map(|&a| values.iter().map(move |&b| (a, b)))
        .collect();
    FrequencySet::from_rationals(&pts, Some((q, q)))
}
