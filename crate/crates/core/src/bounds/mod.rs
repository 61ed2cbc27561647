//! Upper bounds on stopping redundancy and on the stopping redundancy
//! hierarchy, evaluated in exact arithmetic.

mod arith;
mod engine;
mod lemma;

pub use arith::{
    analytic_profile, binom, binom_signed, mass_covered_pair, pair_coverage_at_overlap,
    partial_binom_sum, u_single,
};
pub use engine::{engine_dt, engine_kappa, rank_term, scan, EngineParams, Scan, TracePoint};
pub use lemma::{lemma1_holds, rational};

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::budget::Budget;
use crate::codes::LinearCode;
use crate::cover::{uncovered_counts, CoverageProfile};
use crate::error::{Error, Result};

/// What the parity-check matrix must achieve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// Stopping distance equal to the minimum distance `d`.
    Distance(usize),
    /// Stopping distance at least `l` (a level of the hierarchy).
    Level(usize),
}

impl Target {
    pub fn value(self) -> usize {
        match self {
            Target::Distance(v) | Target::Level(v) => v,
        }
    }
}

/// Input to [`bound_thm2`].
#[derive(Clone, Debug)]
pub struct BoundQuery {
    pub n: usize,
    pub r: usize,
    pub target: Target,
    /// Number of rows fixed before the random ones.
    pub tau: usize,
    /// Uncovered counts for the fixed rows, over `i = 3..=target−1`.
    pub u: CoverageProfile,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Full stopping distance, rank term included.
    Thm2,
    /// Hierarchy level reached without the rank term, then `r − l + 1` rows
    /// added to restore full rank.
    Thm3RankCompletion,
    /// Hierarchy level with the rank term; needs `(r−1)(l−1) ≤ 2^{l−1}`.
    Thm3Conditional,
    /// `Σ_{i=1}^{l−2} C(r, i)`.
    Baseline,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Thm2 => "thm2",
            Variant::Thm3RankCompletion => "thm3_rank_completion",
            Variant::Thm3Conditional => "thm3_conditional",
            Variant::Baseline => "baseline",
        })
    }
}

#[derive(Clone, Debug)]
pub struct BoundResult {
    pub total: usize,
    pub t_star: usize,
    pub kappa: usize,
    pub tau: usize,
    /// Rows added for rank completion (`r − l + 1`, or 0).
    pub completion: usize,
    pub variant: Variant,
    pub trace: Vec<TracePoint>,
    /// Human-readable remarks, e.g. why a variant was skipped.
    pub notes: Vec<String>,
}

impl BoundResult {
    fn from_scan(s: Scan, tau: usize, completion: usize, variant: Variant) -> Self {
        BoundResult {
            total: tau + s.best + completion,
            t_star: s.t_star,
            kappa: s.kappa,
            tau,
            completion,
            variant,
            trace: s.trace,
            notes: Vec::new(),
        }
    }
}

/// `(r−1)(x−1) ≤ 2^{x−1}`, the condition under which the rank term applies.
pub fn rank_condition(r: usize, x: usize) -> bool {
    if x == 0 {
        return false;
    }
    if x > 127 {
        return true;
    }
    ((r as u128).saturating_sub(1)) * (x as u128 - 1) <= 1u128 << (x - 1)
}

/// Note emitted when only the rank-completion variant is available.
pub const CONDITIONAL_UNAVAILABLE: &str =
    "(r-1)(l-1) > 2^(l-1): conditional variant unavailable, using rank-completion variant";

fn check_profile(u: &CoverageProfile, hi: usize) -> Result<CoverageProfile> {
    if hi < 3 {
        return Ok(u.truncated(2));
    }
    if u.i_lo() != 3 || u.i_hi() < hi {
        return Err(Error::precondition(format!(
            "uncovered counts must cover i = 3..={hi}, got {}..={}",
            u.i_lo(),
            u.i_hi()
        )));
    }
    Ok(u.truncated(hi))
}

/// Stopping-redundancy bound `τ + min_{t ≥ r} (t + κ_t)` for the full
/// stopping distance.
///
/// # Errors
/// Fails if `(r−1)(d−1) > 2^{d−1}`, the target is a hierarchy level, or the
/// counts do not cover `3..=d−1`.
pub fn bound_thm2(q: &BoundQuery) -> Result<BoundResult> {
    let d = match q.target {
        Target::Distance(d) => d,
        Target::Level(l) => {
            return Err(Error::precondition(format!(
                "bound_thm2 needs the full distance as target, got level {l}"
            )))
        }
    };
    if d < 4 {
        return Err(Error::precondition(format!("need d >= 4, got {d}")));
    }
    if !rank_condition(q.r, d) {
        return Err(Error::precondition(format!(
            "(r-1)(d-1) > 2^(d-1) for r = {}, d = {d}",
            q.r
        )));
    }
    let u = check_profile(&q.u, d - 1)?;
    let s = scan(&EngineParams {
        r: q.r,
        target: d,
        tau: q.tau,
        u: &u,
        rank_term: true,
    })?;
    Ok(BoundResult::from_scan(s, q.tau, 0, Variant::Thm2))
}

/// Level-`l` hierarchy bound from `τ` fixed rows with counts `u`: the smaller
/// of the rank-completion variant and, when `(r−1)(l−1) ≤ 2^{l−1}`, the
/// conditional variant. A tie reports the conditional variant.
pub fn hierarchy_bound(r: usize, l: usize, tau: usize, u: &CoverageProfile) -> Result<BoundResult> {
    if l < 4 || l > r + 1 {
        return Err(Error::precondition(format!(
            "level l = {l} outside [4, r + 1 = {}]",
            r + 1
        )));
    }
    let u = check_profile(u, l - 1)?;
    let params = |rank_term| EngineParams {
        r,
        target: l,
        tau,
        u: &u,
        rank_term,
    };
    let completion = BoundResult::from_scan(
        scan(&params(false))?,
        tau,
        r - l + 1,
        Variant::Thm3RankCompletion,
    );
    if !rank_condition(r, l) {
        let mut res = completion;
        res.notes.push(CONDITIONAL_UNAVAILABLE.to_string());
        return Ok(res);
    }
    let conditional =
        BoundResult::from_scan(scan(&params(true))?, tau, 0, Variant::Thm3Conditional);
    Ok(if conditional.total <= completion.total {
        conditional
    } else {
        completion
    })
}

/// Hierarchy bound from `τ` minimum-weight dual rows with analytic counts
/// (`τ ∈ {0, 1, 2}`), or from explicit counts when `u_override` is given.
pub fn bound_thm3(
    n: usize,
    r: usize,
    dual_distance: usize,
    l: usize,
    tau: usize,
    u_override: Option<&CoverageProfile>,
) -> Result<BoundResult> {
    if l < 4 {
        return Err(Error::precondition(format!("need l >= 4, got {l}")));
    }
    let u = match u_override {
        Some(u) => u.clone(),
        None => analytic_profile(n as u64, dual_distance as u64, tau, l - 1)?,
    };
    hierarchy_bound(r, l, tau, &u)
}

/// Hierarchy bound with exact counts for the first `τ` rows of the code's
/// parity-check matrix.
///
/// # Errors
/// Fails on a bad `τ` or `l`, or when counting exceeds the budget.
pub fn bound_hybrid(
    code: &LinearCode,
    tau: usize,
    l: usize,
    budget: &Budget,
) -> Result<BoundResult> {
    let r = code.r();
    if tau == 0 || tau > r {
        return Err(Error::precondition(format!(
            "need 1 <= tau <= r = {r}, got {tau}"
        )));
    }
    if l < 4 {
        return Err(Error::precondition(format!("need l >= 4, got {l}")));
    }
    if let Some(d) = code.d() {
        if l > d {
            return Err(Error::precondition(format!(
                "level l = {l} exceeds d = {d}"
            )));
        }
    }
    let rows = code.h().take_rows(tau);
    if rows.rank() != tau {
        return Err(Error::precondition(format!(
            "the first {tau} rows are dependent"
        )));
    }
    let u = uncovered_counts(&rows, 3, l - 1, budget)?;
    hierarchy_bound(r, l, tau, &u)
}

/// The partial-binomial-sum baseline `Σ_{i=1}^{l−2} C(r, i)`.
pub fn baseline_bound(r: usize, l: usize) -> Result<BoundResult> {
    if l < 2 {
        return Err(Error::precondition(format!("need l >= 2, got {l}")));
    }
    let v = partial_binom_sum(r as u64, l as u64 - 2);
    let total = v
        .to_usize()
        .ok_or_else(|| Error::precondition(format!("baseline {v} does not fit in usize")))?;
    Ok(BoundResult {
        total,
        t_star: 0,
        kappa: 0,
        tau: 0,
        completion: 0,
        variant: Variant::Baseline,
        trace: Vec::new(),
        notes: Vec::new(),
    })
}

/// The three analytic stopping-redundancy bounds of a code with known `d`
/// and `d⊥`, for `τ = 0, 1, 2`.
pub fn analytic_thm2(
    n: usize,
    r: usize,
    d: usize,
    dual_distance: usize,
    tau: usize,
) -> Result<BoundResult> {
    let u = analytic_profile(n as u64, dual_distance as u64, tau, d - 1)?;
    bound_thm2(&BoundQuery {
        n,
        r,
        target: Target::Distance(d),
        tau,
        u,
    })
}

/// `Σ_i u_i` as a quick size figure for diagnostics.
pub fn profile_total(u: &CoverageProfile) -> BigUint {
    u.iter().map(|(_, v)| v).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::golay24;

    #[test]
    fn golay_stopping_redundancy_bounds() {
        let totals: Vec<usize> = (0..3)
            .map(|tau| analytic_thm2(24, 12, 8, 8, tau).unwrap().total)
            .collect();
        assert_eq!(totals, [182, 180, 177]);
        assert_eq!(baseline_bound(12, 8).unwrap().total, 2509);
    }

    #[test]
    fn result_adds_up() {
        let res = analytic_thm2(24, 12, 8, 8, 1).unwrap();
        assert_eq!(res.total, res.tau + res.t_star + res.kappa);
        assert!(res.t_star >= 12);
        let p = res.trace.iter().find(|p| p.t == res.t_star).unwrap();
        assert_eq!(p.kappa, res.kappa);
    }

    #[test]
    fn golay_hierarchy() {
        let got: Vec<usize> = (4..=8)
            .map(|l| bound_thm3(24, 12, 8, l, 2, None).unwrap().total)
            .collect();
        assert_eq!(got, [25, 36, 59, 103, 177]);
        let base: Vec<usize> = (4..=8)
            .map(|l| baseline_bound(12, l).unwrap().total)
            .collect();
        assert_eq!(base, [78, 298, 793, 1585, 2509]);
    }

    #[test]
    fn hierarchy_at_full_distance_matches_thm2() {
        let h = bound_thm3(24, 12, 8, 8, 2, None).unwrap();
        assert_eq!(h.total, analytic_thm2(24, 12, 8, 8, 2).unwrap().total);
    }

    #[test]
    fn hybrid_examples() {
        let code = golay24();
        let b = Budget::default();
        assert_eq!(bound_hybrid(&code, 1, 8, &b).unwrap().total, 180);
        assert_eq!(bound_hybrid(&code, 5, 6, &b).unwrap().total, 56);
        assert_eq!(bound_hybrid(&code, 12, 4, &b).unwrap().total, 33);
    }

    #[test]
    fn hybrid_dominates_analytic() {
        let code = golay24();
        let hybrid = bound_hybrid(&code, 2, 8, &Budget::default()).unwrap();
        assert!(hybrid.total <= bound_thm3(24, 12, 8, 8, 2, None).unwrap().total);
    }

    #[test]
    fn variant_selection() {
        // (11)(3) = 33 > 8 at l = 4: only rank completion applies
        let r = bound_thm3(24, 12, 8, 4, 2, None).unwrap();
        assert_eq!(r.variant, Variant::Thm3RankCompletion);
        assert_eq!(r.completion, 9);
        assert_eq!(r.notes, [CONDITIONAL_UNAVAILABLE]);
        assert_eq!(r.total, r.tau + r.t_star + r.kappa + r.completion);
        assert!(rank_condition(12, 8));
        assert!(!rank_condition(12, 7));
    }

    #[test]
    fn thm2_preconditions() {
        let u = analytic_profile(24, 8, 0, 6).unwrap();
        let q = BoundQuery {
            n: 24,
            r: 12,
            target: Target::Distance(7),
            tau: 0,
            u,
        };
        assert!(bound_thm2(&q).is_err());
        let u = analytic_profile(24, 8, 0, 5).unwrap();
        let q = BoundQuery {
            n: 24,
            r: 12,
            target: Target::Distance(8),
            tau: 0,
            u,
        };
        assert!(bound_thm2(&q).is_err(), "profile too short");
        assert!(bound_hybrid(&golay24(), 0, 6, &Budget::default()).is_err());
        assert!(bound_hybrid(&golay24(), 2, 9, &Budget::default()).is_err());
    }
}
