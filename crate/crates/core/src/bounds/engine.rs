//! The probabilistic-method bound engine.
//!
//! With `R = 2^r`, `τ` fixed rows and `t ≥ r` random rows,
//!
//! ```text
//! D_t = Σ_i u_i Π_{j=τ+1}^{τ+t} (R − j − i·2^{r−i}) / (R − j)  [+ rank term]
//! rank term = 2^{−(t−r)} · (1 + (2/3) / (2^{t−r+1} − 1))
//! P_j(x) = ⌊x · (R − (τ+t+j) − c) / (R − (τ+t+j))⌋,   c = (target−1)·2^{r−target+1}
//! κ_t = min { k ≥ 0 : P_k(…P_1(⌊D_t⌋)…) = 0 }
//! ```
//!
//! and the bound is `τ + min_t (t + κ_t)`. Everything is exact: all product
//! terms share the denominator `Π (R − j)`, so `D_t` is kept as one big
//! numerator per `i` over a common denominator and floored by integer
//! division. A factor that is zero or negative makes its `i`-term vanish for
//! good, since later factors only get smaller.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::cover::CoverageProfile;
use crate::error::{Error, Result};

/// One point of a t-scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracePoint {
    pub t: usize,
    pub d_floor: BigUint,
    pub kappa: usize,
}

/// Parameters shared by every evaluation in one scan.
#[derive(Clone, Debug)]
pub struct EngineParams<'a> {
    pub r: usize,
    /// Target stopping distance; sets the contraction constant of `P_j`.
    pub target: usize,
    pub tau: usize,
    pub u: &'a CoverageProfile,
    pub rank_term: bool,
}

impl EngineParams<'_> {
    fn two_r(&self) -> u128 {
        1u128 << self.r
    }

    fn validate(&self) -> Result<()> {
        if self.r < 2 || self.r > 62 {
            return Err(Error::precondition(format!(
                "need 2 <= r <= 62, got r = {}",
                self.r
            )));
        }
        if self.target < 2 || self.target > self.r + 1 {
            return Err(Error::precondition(format!(
                "target {} outside [2, r + 1 = {}]",
                self.target,
                self.r + 1
            )));
        }
        if let Some((i, _)) = self.u.iter().find(|&(i, _)| i > self.r) {
            return Err(Error::precondition(format!(
                "u_{i} given but i > r = {}",
                self.r
            )));
        }
        if (self.tau as u128) >= self.two_r() - 1 {
            return Err(Error::precondition(format!(
                "tau = {} leaves no dual codewords to draw (2^r - 1 = {})",
                self.tau,
                self.two_r() - 1
            )));
        }
        Ok(())
    }
}

/// `2^{-s} (1 + (2/3)/(2^{s+1} − 1))` as an exact (numerator, denominator).
pub fn rank_term(s: usize) -> (BigUint, BigUint) {
    let p = BigUint::from(1u32) << s; // 2^s
    let two_p1 = &p << 1usize; // 2^{s+1}
    let num = &two_p1 * 3u32 - 1u32;
    let den = p * 3u32 * (two_p1 - 1u32);
    (num, den)
}

/// Incrementally maintained `D_t`.
struct Accumulator {
    two_r: u128,
    // (i·2^{r−i}, numerator including u_i); a dead term has numerator 0
    terms: Vec<(u128, BigUint)>,
    denom: BigUint,
    next_j: u128,
}

impl Accumulator {
    fn new(p: &EngineParams<'_>) -> Self {
        let terms =
            p.u.iter()
                .map(|(i, u)| ((i as u128) << (p.r - i), u.clone()))
                .collect();
        Accumulator {
            two_r: p.two_r(),
            terms,
            denom: BigUint::from(1u32),
            next_j: p.tau as u128 + 1,
        }
    }

    /// Applies the factor for `j = next_j`.
    fn step(&mut self) {
        let j = self.next_j;
        let den = self.two_r - j;
        for (cover, num) in self.terms.iter_mut() {
            if num.is_zero() {
                continue;
            }
            if *cover >= den {
                num.set_zero();
            } else {
                *num *= den - *cover;
            }
        }
        self.denom *= den;
        self.next_j += 1;
    }

    fn numerator(&self) -> BigUint {
        self.terms.iter().map(|(_, n)| n).sum()
    }

    /// `(numerator, denominator)` of `D_t`, unreduced.
    fn value(&self, t: usize, r: usize, with_rank: bool) -> (BigUint, BigUint) {
        let num = self.numerator();
        if !with_rank {
            return (num, self.denom.clone());
        }
        let (rp, rq) = rank_term(t - r);
        (num * &rq + rp * &self.denom, &self.denom * rq)
    }

    fn floor(&self, t: usize, r: usize, with_rank: bool) -> BigUint {
        let num = self.numerator();
        let (q, rem) = num.div_rem(&self.denom);
        if !with_rank {
            return q;
        }
        // 0 < rank term <= 5/3, so only the fractional carry needs exact work
        let (rp, rq) = rank_term(t - r);
        let carry = (rem * &rq + rp * &self.denom) / (&self.denom * rq);
        q + carry
    }
}

/// Exact `D_t` for one `t`.
pub fn engine_dt(p: &EngineParams<'_>, t: usize) -> Result<BigRational> {
    p.validate()?;
    if p.rank_term && t < p.r {
        return Err(Error::precondition(format!(
            "rank term needs t >= r, got t = {t}"
        )));
    }
    if (p.tau + t) as u128 >= p.two_r() {
        return Err(Error::precondition(format!(
            "tau + t = {} must stay below 2^r",
            p.tau + t
        )));
    }
    let mut acc = Accumulator::new(p);
    for _ in 0..t {
        acc.step();
    }
    let (num, den) = acc.value(t, p.r, p.rank_term);
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// `κ_t`: number of contraction steps `P_1, P_2, …` until `⌊D_t⌋` reaches 0.
///
/// # Errors
/// Fails when the row count `τ + t + k` would have to exceed `2^r − 1`.
pub fn engine_kappa(
    d_floor: &BigUint,
    r: usize,
    target: usize,
    tau: usize,
    t: usize,
) -> Result<usize> {
    if r > 62 || target < 1 || target > r + 1 {
        return Err(Error::precondition(format!(
            "unsupported r = {r}, target = {target}"
        )));
    }
    let two_r = 1u128 << r;
    let c = ((target - 1) as u128) << (r + 1 - target);
    let mut k = 0usize;
    let base = (tau + t) as u128;
    let exhausted = |k: usize| {
        Error::precondition(format!(
            "row budget exhausted: tau + t + k = {} exceeds 2^r - 1",
            base + k as u128
        ))
    };
    if let Some(mut x) = d_floor.to_u64().map(u128::from) {
        while x > 0 {
            k += 1;
            let rows = base + k as u128;
            if rows >= two_r {
                return Err(exhausted(k));
            }
            let den = two_r - rows;
            x = if c >= den { 0 } else { x * (den - c) / den };
        }
        return Ok(k);
    }
    let mut x = d_floor.clone();
    while !x.is_zero() {
        k += 1;
        let rows = base + k as u128;
        if rows >= two_r {
            return Err(exhausted(k));
        }
        let den = two_r - rows;
        if c >= den {
            x.set_zero();
        } else {
            x = x * (den - c) / den;
        }
    }
    Ok(k)
}

/// Result of scanning `t = r, r+1, …`.
#[derive(Clone, Debug)]
pub struct Scan {
    /// `min_t (t + κ_t)`, without `τ`.
    pub best: usize,
    pub t_star: usize,
    pub kappa: usize,
    pub trace: Vec<TracePoint>,
}

/// Minimises `t + κ_t` over `t ≥ r`.
///
/// The scan stops at the first `t` that is not below the best total found so
/// far: `κ_t ≥ 0` means no larger `t` can do better. Ties keep the smaller `t`.
pub fn scan(p: &EngineParams<'_>) -> Result<Scan> {
    p.validate()?;
    let two_r = p.two_r();
    let mut acc = Accumulator::new(p);
    for _ in 0..p.r {
        acc.step();
    }
    let mut best: Option<(usize, usize, usize)> = None;
    let mut trace = Vec::new();
    let mut t = p.r;
    loop {
        if let Some((total, _, _)) = best {
            if t >= total {
                break;
            }
        }
        if (p.tau + t) as u128 >= two_r - 1 {
            break;
        }
        let d_floor = acc.floor(t, p.r, p.rank_term);
        match engine_kappa(&d_floor, p.r, p.target, p.tau, t) {
            Ok(kappa) => {
                if best.is_none_or(|(total, _, _)| t + kappa < total) {
                    best = Some((t + kappa, t, kappa));
                }
                trace.push(TracePoint { t, d_floor, kappa });
            }
            // this t runs out of rows; a larger t may still fit
            Err(Error::Precondition(_)) => {}
            Err(e) => return Err(e),
        }
        acc.step();
        t += 1;
    }
    let (best, t_star, kappa) = best.ok_or_else(|| {
        Error::precondition("no t >= r yields a finite bound within 2^r - 1 rows")
    })?;
    Ok(Scan {
        best,
        t_star,
        kappa,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::arith::analytic_profile;
    use crate::gf2::BitMatrix;
    use num_traits::One;

    fn profile(u: &[u64]) -> CoverageProfile {
        CoverageProfile::new(
            3,
            u.iter().map(|&x| BigUint::from(x)).collect(),
            BitMatrix::new(24),
            true,
        )
    }

    /// Straight-line rational evaluation, independent of the accumulator.
    fn dt_oracle(
        r: usize,
        tau: usize,
        u: &[(usize, u64)],
        t: usize,
        with_rank: bool,
    ) -> BigRational {
        let two_r = BigInt::from(1u64 << r);
        let mut sum = BigRational::zero();
        for &(i, ui) in u {
            let mut prod = BigRational::from_integer(BigInt::from(ui));
            for j in tau + 1..=tau + t {
                let f = BigRational::one()
                    - BigRational::new(
                        BigInt::from((i as u64) << (r - i)),
                        &two_r - BigInt::from(j),
                    );
                if f <= BigRational::zero() {
                    prod = BigRational::zero();
                    break;
                }
                prod *= f;
            }
            sum += prod;
        }
        if with_rank {
            let s = t - r;
            let p2 = BigRational::from_integer(BigInt::from(2u32).pow(s as u32));
            let p21 = BigRational::from_integer(BigInt::from(2u32).pow(s as u32 + 1));
            let two_thirds = BigRational::new(2.into(), 3.into());
            sum += (BigRational::one() + two_thirds / (p21 - BigRational::one())) / p2;
        }
        sum
    }

    #[test]
    fn rank_term_only_at_t_equals_r() {
        let u = profile(&[0, 0]);
        let p = EngineParams {
            r: 12,
            target: 5,
            tau: 0,
            u: &u,
            rank_term: true,
        };
        assert_eq!(
            engine_dt(&p, 12).unwrap(),
            BigRational::new(5.into(), 3.into())
        );
    }

    #[test]
    fn vanishing_factor_kills_term() {
        // r = 4, i = 3: i·2^{r−i} = 6 = 2^r − (tau + 1) with tau = 9
        let u = profile(&[5]);
        let p = EngineParams {
            r: 4,
            target: 4,
            tau: 9,
            u: &u,
            rank_term: false,
        };
        assert!(engine_dt(&p, 1).unwrap().is_zero());
    }

    #[test]
    fn accumulator_matches_oracle() {
        let u = analytic_profile(24, 8, 1, 7).unwrap();
        let pairs: Vec<(usize, u64)> = u.iter().map(|(i, v)| (i, v.to_u64().unwrap())).collect();
        for with_rank in [false, true] {
            let p = EngineParams {
                r: 12,
                target: 8,
                tau: 1,
                u: &u,
                rank_term: with_rank,
            };
            for t in [12, 13, 40, 57] {
                assert_eq!(
                    engine_dt(&p, t).unwrap(),
                    dt_oracle(12, 1, &pairs, t, with_rank)
                );
            }
        }
        // small r where factors go negative
        let u = profile(&[7, 3]);
        let p = EngineParams {
            r: 5,
            target: 4,
            tau: 2,
            u: &u,
            rank_term: true,
        };
        for t in 5..20 {
            assert_eq!(
                engine_dt(&p, t).unwrap(),
                dt_oracle(5, 2, &[(3, 7), (4, 3)], t, true)
            );
        }
    }

    #[test]
    fn kappa_basics() {
        assert_eq!(engine_kappa(&BigUint::zero(), 12, 8, 1, 30).unwrap(), 0);
        assert_eq!(engine_kappa(&BigUint::one(), 12, 8, 1, 30).unwrap(), 1);
        assert_eq!(engine_kappa(&BigUint::one(), 24, 12, 2, 900).unwrap(), 1);
    }

    #[test]
    fn kappa_big_path_agrees_with_fast_path() {
        let x = BigUint::from(u64::MAX) * 3u32;
        let big = engine_kappa(&x, 24, 12, 2, 100).unwrap();
        // same recursion in plain rational steps
        let two_r = 1u128 << 24;
        let c = 11u128 << 13;
        let mut y = x.clone();
        let mut k = 0;
        while !y.is_zero() {
            k += 1;
            let den = two_r - (102 + k as u128);
            y = y * (den - c) / den;
        }
        assert_eq!(big, k);
    }

    #[test]
    fn kappa_row_budget() {
        // tau + t = 7 = 2^3 − 1 rows already: no room for another
        let err = engine_kappa(&BigUint::from(1000u32), 3, 2, 0, 7).unwrap_err();
        assert!(err.to_string().contains("row budget"), "{err}");
    }

    #[test]
    fn kappa_monotone_in_d_floor() {
        let mut prev = 0;
        for x in 0u64..3000 {
            let k = engine_kappa(&BigUint::from(x * 37), 12, 8, 2, 60).unwrap();
            assert!(k >= prev);
            prev = k;
        }
    }
}
