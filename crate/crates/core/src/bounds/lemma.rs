//! Exact check of the rank-deficiency contraction inequality
//!
//! `b − (2^r − 2^{r−b}) / (2^r − x) ≤ b · (1 − (d−1)·2^{r−d+1} / (2^r − x))`
//!
//! for `r ≥ 3`, `1 ≤ b ≤ r − 2`, `(r−1)(d−1) ≤ 2^{d−1}` and `x < 2^r`.
//! For integer `b` both sides are exact rationals. Otherwise `2^{−frac(b)}` is
//! replaced by a dyadic upper bound; the left side grows with `2^{r−b}`, so
//! a `true` verdict still holds for the real value.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const DYADIC_BITS: usize = 96;

/// Smallest `m / 2^K` with `(m / 2^K)^q ≥ 2^{−p}`, for `0 < p < q`.
fn dyadic_upper_pow2_neg(p: &BigUint, q: &BigUint) -> BigRational {
    let q_u = q.to_usize().expect("denominator of b fits in usize");
    let p_u = p.to_usize().expect("numerator fits in usize");
    let scale = BigUint::one() << DYADIC_BITS;
    // m^q · 2^p ≥ 2^{K q}
    let target = BigUint::one() << (DYADIC_BITS * q_u);
    let ok = |m: &BigUint| (m.pow(q_u as u32) << p_u) >= target;
    let (mut lo, mut hi) = (BigUint::zero(), scale.clone());
    while &lo + 1u32 < hi {
        let mid: BigUint = (&lo + &hi) >> 1usize;
        if ok(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    BigRational::new(BigInt::from(hi), BigInt::from(scale))
}

/// An upper bound on `2^e` for rational `e`, exact when `e` is an integer.
fn pow2_upper(e: &BigRational) -> BigRational {
    let fl = e.floor().to_integer();
    let frac = e - BigRational::from_integer(fl.clone());
    let whole = if fl.is_negative() {
        BigRational::new(BigInt::one(), BigInt::one() << (-&fl).to_usize().unwrap())
    } else {
        BigRational::from_integer(BigInt::one() << fl.to_usize().unwrap())
    };
    if frac.is_zero() {
        return whole;
    }
    // 2^{frac} = 2 · 2^{−(1 − frac)}
    let rest = BigRational::one() - frac;
    let (p, q) = (
        rest.numer().to_biguint().unwrap(),
        rest.denom().to_biguint().unwrap(),
    );
    whole * BigRational::from_integer(2.into()) * dyadic_upper_pow2_neg(&p, &q)
}

/// Evaluates the inequality at `(r, d, b, x)`.
///
/// # Errors
/// Fails when the point lies outside the precondition region.
pub fn lemma1_holds(r: u32, d: u32, b: &BigRational, x: &BigInt) -> Result<bool> {
    if !(3..=4096).contains(&r) {
        return Err(Error::precondition(format!("need r >= 3, got {r}")));
    }
    let one = BigRational::one();
    let r_q = BigRational::from_integer(BigInt::from(r));
    if *b < one || *b > &r_q - BigRational::from_integer(2.into()) {
        return Err(Error::precondition(format!(
            "need 1 <= b <= r - 2, got b = {b}"
        )));
    }
    if d < 1 || BigUint::from(r - 1) * (d - 1) > (BigUint::one() << (d - 1) as usize) {
        return Err(Error::precondition(format!(
            "(r-1)(d-1) > 2^(d-1) for r = {r}, d = {d}"
        )));
    }
    let two_r = BigInt::one() << r as usize;
    if *x >= two_r {
        return Err(Error::precondition(format!("need x < 2^r, got x = {x}")));
    }
    let denom = BigRational::from_integer(&two_r - x);
    let two_r_q = BigRational::from_integer(two_r);
    let pow = pow2_upper(&(&r_q - b));
    let lhs = b - (&two_r_q - pow) / &denom;
    // (d−1)·2^{r−d+1}, which may be fractional when d > r + 1
    let c = if d <= r + 1 {
        BigRational::from_integer(BigInt::from(d - 1) << (r + 1 - d) as usize)
    } else {
        BigRational::new(BigInt::from(d - 1), BigInt::one() << (d - r - 1) as usize)
    };
    let rhs = b * (one - c / denom);
    Ok(lhs <= rhs)
}

/// Integer/denominator helper for callers sampling `b = num / den`.
pub fn rational(num: i64, den: i64) -> BigRational {
    let g = num.gcd(&den).max(1);
    BigRational::new(BigInt::from(num / g), BigInt::from(den / g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_points() {
        assert!(lemma1_holds(12, 8, &rational(1, 1), &BigInt::from(100)).unwrap());
        assert!(lemma1_holds(12, 8, &rational(10, 1), &BigInt::from(0)).unwrap());
        assert!(lemma1_holds(3, 4, &rational(1, 1), &BigInt::from(7)).unwrap());
    }

    #[test]
    fn fractional_b() {
        assert!(lemma1_holds(12, 8, &rational(7, 2), &BigInt::from(3000)).unwrap());
        assert!(lemma1_holds(20, 9, &rational(53, 7), &BigInt::from(-5)).unwrap());
    }

    #[test]
    fn dyadic_bound_is_upper() {
        // 2^{-1/2} ≈ 0.70710678…
        let u = dyadic_upper_pow2_neg(&BigUint::from(1u32), &BigUint::from(2u32));
        let sq = &u * &u;
        assert!(sq >= BigRational::new(1.into(), 2.into()));
        let f = u.to_f64().unwrap();
        assert!((f - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn preconditions_enforced() {
        assert!(lemma1_holds(2, 4, &rational(1, 1), &BigInt::from(0)).is_err());
        assert!(lemma1_holds(12, 8, &rational(11, 1), &BigInt::from(0)).is_err());
        assert!(lemma1_holds(12, 3, &rational(2, 1), &BigInt::from(0)).is_err());
        assert!(lemma1_holds(12, 8, &rational(2, 1), &BigInt::from(4096)).is_err());
    }
}
