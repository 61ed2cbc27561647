//! Closed-form counting quantities: binomials, baseline sums and the analytic
//! uncovered-set counts for one or two fixed minimum-weight dual rows.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::cover::CoverageProfile;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Exact `C(n, k)`; zero when `k > n`.
pub fn binom(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// `C(n, k)` extended to any integer arguments: zero if `n < 0`, `k < 0` or `k > n`.
pub fn binom_signed(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 {
        BigUint::zero()
    } else {
        binom(n as u64, k as u64)
    }
}

/// `Σ_{i=1}^{m} C(r, i)`.
pub fn partial_binom_sum(r: u64, m: u64) -> BigUint {
    (1..=m).map(|i| binom(r, i)).sum()
}

/// Number of i-sets not covered by a single dual word of weight `dual_distance`:
/// `C(n, i) − d⊥·C(n − d⊥, i − 1)`.
pub fn u_single(n: u64, dual_distance: u64, i: u64) -> Result<BigUint> {
    if dual_distance == 0 || dual_distance > n {
        return Err(Error::precondition(format!(
            "need 1 <= d_perp <= n, got d_perp = {dual_distance}, n = {n}"
        )));
    }
    let covered = binom_signed(n as i64 - dual_distance as i64, i as i64 - 1) * dual_distance;
    Ok(binom(n, i) - covered)
}

fn pair_overlap_term(n: i64, w: i64, delta: i64, i: i64) -> BigUint {
    let rest = n - 2 * w + delta;
    binom_signed(rest, i - 1) * (delta as u64)
        + binom_signed(rest, i - 2) * (((delta - w) * (delta - w)) as u64)
}

/// Guaranteed number of i-sets covered by two distinct dual words of weight
/// `w = d⊥`, minimised over their overlap `Δ ∈ [0, ⌊w/2⌋]`:
///
/// `2w·C(n−w, i−1) − max_Δ { Δ·C(n−2w+Δ, i−1) + (Δ−w)²·C(n−2w+Δ, i−2) }`.
pub fn mass_covered_pair(n: u64, dual_distance: u64, i: u64) -> Result<BigUint> {
    let w = dual_distance as i64;
    if w == 0 || 2 * w > n as i64 + w / 2 {
        return Err(Error::precondition(format!(
            "two weight-{w} words cannot fit in length {n}"
        )));
    }
    let single = binom_signed(n as i64 - w, i as i64 - 1) * (2 * dual_distance);
    let worst = (0..=w / 2)
        .map(|delta| pair_overlap_term(n as i64, w, delta, i as i64))
        .max()
        .expect("nonempty delta range");
    Ok(single - worst)
}

/// Coverage of two weight-`w` words overlapping in exactly `delta` positions.
pub fn pair_coverage_at_overlap(n: u64, w: u64, delta: u64, i: u64) -> BigUint {
    binom_signed(n as i64 - w as i64, i as i64 - 1) * (2 * w)
        - pair_overlap_term(n as i64, w as i64, delta as i64, i as i64)
}

/// Analytic `u_i` for `i = 3..=i_hi` when `tau` fixed rows are minimum-weight
/// dual words: `tau = 0` gives `C(n, i)`, `tau = 1` the single-row count,
/// `tau = 2` the pair count.
pub fn analytic_profile(
    n: u64,
    dual_distance: u64,
    tau: usize,
    i_hi: usize,
) -> Result<CoverageProfile> {
    let u = (3..=i_hi as u64)
        .map(|i| match tau {
            0 => Ok(binom(n, i)),
            1 => u_single(n, dual_distance, i),
            2 => Ok(binom(n, i) - mass_covered_pair(n, dual_distance, i)?),
            _ => Err(Error::precondition(format!(
                "no analytic uncovered counts for tau = {tau}; supply exact counts"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoverageProfile::new(
        3,
        u,
        BitMatrix::new(n as usize),
        false,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::cover::uncovered_counts;
    use crate::gf2::BitVector;

    fn product_oracle(n: u64, k: u64) -> u128 {
        // direct n!/(k!(n-k)!) via running products in u128
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for j in 0..k {
            num *= (n - j) as u128;
            den *= (j + 1) as u128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
        num / den
    }

    fn gcd(a: u128, b: u128) -> u128 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binom(24, 3), BigUint::from(product_oracle(24, 3)));
        assert_eq!(binom(24, 3), BigUint::from(2024u32));
        assert_eq!(binom(48, 11), BigUint::from(product_oracle(48, 11)));
        assert_eq!(binom(48, 11), BigUint::from(22_595_200_368u64));
        assert_eq!(binom(17, 0), BigUint::one());
        assert_eq!(binom(3, 4), BigUint::zero());
        assert_eq!(binom_signed(-2, 1), BigUint::zero());
    }

    #[test]
    fn baseline_sums() {
        assert_eq!(partial_binom_sum(12, 6), BigUint::from(2509u32));
        assert_eq!(partial_binom_sum(24, 10), BigUint::from(4_540_385u32));
        assert_eq!(partial_binom_sum(24, 2), BigUint::from(300u32));
    }

    fn weight_row(n: usize, ones: impl IntoIterator<Item = usize>) -> BitMatrix {
        BitMatrix::from_rows(n, vec![BitVector::from_positions(n, ones)]).unwrap()
    }

    #[test]
    fn u_single_matches_brute_force() {
        assert_eq!(u_single(24, 8, 3).unwrap(), BigUint::from(1064u32));
        let m = weight_row(24, 0..8);
        let p = uncovered_counts(&m, 3, 3, &Budget::default()).unwrap();
        assert_eq!(p.get(3).unwrap(), &BigUint::from(1064u32));

        assert_eq!(u_single(48, 12, 3).unwrap(), BigUint::from(9736u32));
        let m = weight_row(48, 0..12);
        let p = uncovered_counts(&m, 3, 3, &Budget::default()).unwrap();
        assert_eq!(p.get(3).unwrap(), &BigUint::from(9736u32));

        // a full-weight word covers no i-set with i >= 2
        assert_eq!(u_single(10, 10, 4).unwrap(), binom(10, 4));
        assert!(u_single(5, 0, 3).is_err());
    }

    /// Two weight-w words overlapping in exactly `delta` positions.
    fn pair(n: usize, w: usize, delta: usize) -> BitMatrix {
        let a = BitVector::from_positions(n, 0..w);
        let b = BitVector::from_positions(n, (w - delta)..(2 * w - delta));
        BitMatrix::from_rows(n, vec![a, b]).unwrap()
    }

    fn covered_by_pair(n: usize, w: usize, delta: usize, i: usize) -> BigUint {
        let p = uncovered_counts(&pair(n, w, delta), i, i, &Budget::default()).unwrap();
        binom(n as u64, i as u64) - p.get(i).unwrap()
    }

    #[test]
    fn mass_covered_pair_golay() {
        assert_eq!(mass_covered_pair(24, 8, 3).unwrap(), BigUint::from(1408u32));
        let per_delta: Vec<BigUint> = (0..=4).map(|d| covered_by_pair(24, 8, d, 3)).collect();
        for (d, c) in per_delta.iter().enumerate() {
            assert_eq!(*c, pair_coverage_at_overlap(24, 8, d as u64, 3));
        }
        assert_eq!(per_delta.iter().min().unwrap(), &BigUint::from(1408u32));
        assert_eq!(per_delta[0], BigUint::from(1408u32));
    }

    #[test]
    fn mass_covered_pair_qr() {
        let m = mass_covered_pair(48, 12, 3).unwrap();
        let per_delta: Vec<BigUint> = (0..=6).map(|d| covered_by_pair(48, 12, d, 3)).collect();
        assert_eq!(per_delta.iter().min().unwrap(), &m);
        assert_eq!(m, BigUint::from(11430u32));
    }

    #[test]
    fn mass_covered_pair_never_exceeds_twice_single() {
        for (n, w) in [(24u64, 8u64), (48, 12), (10, 4), (16, 6)] {
            for i in 3..8 {
                let m = mass_covered_pair(n, w, i).unwrap();
                assert!(m <= binom_signed(n as i64 - w as i64, i as i64 - 1) * (2 * w));
            }
        }
    }

    #[test]
    fn analytic_profiles() {
        let p = analytic_profile(24, 8, 1, 7).unwrap();
        assert_eq!((p.i_lo(), p.i_hi()), (3, 7));
        assert!(!p.is_exact());
        assert_eq!(p.get(3).unwrap(), &BigUint::from(1064u32));
        assert!(analytic_profile(24, 8, 3, 7).is_err());
    }
}
