//! Builders for redundant parity-check matrices with a prescribed stopping
//! distance, plus an independent verifier.
//!
//! Both builders track the potential `δ(H) = Σ_i |uncovered i-sets| + η`,
//! with `η = r − rank H` and `i` ranging over `3..=l−1`. Sets of size 1 and 2
//! need no bookkeeping: once `H` has full rank they are covered because the
//! code has `d ≥ 3`. `δ = 0` therefore means the stopping distance is at
//! least `l`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{binom, rank_condition};
use crate::budget::Budget;
use crate::codes::LinearCode;
use crate::combinadic::{binom_u128, Colex};
use crate::cover::{fill_mask, stopping_distance, DistanceKind, StoppingDistance};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector, EchelonBasis, Span};

/// Above this redundancy the candidate pool is no longer the whole dual code.
pub const FULL_POOL_MAX_R: usize = 16;
/// Size of the seeded random sample added to a restricted pool.
pub const SAMPLED_POOL_SIZE: usize = 4096;

const PAR_CHUNK: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Keep every dual word, in enumeration order, that covers something new.
    Lexicographic,
    /// Always add the dual word covering the most uncovered sets.
    MaxCoverage,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Lexicographic => "lexicographic",
            Strategy::MaxCoverage => "max_coverage",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lexicographic" | "lex" => Ok(Strategy::Lexicographic),
            "max_coverage" | "max-coverage" | "maxcov" => Ok(Strategy::MaxCoverage),
            _ => Err(Error::precondition(format!(
                "unknown strategy {s:?} (expected lexicographic or max_coverage)"
            ))),
        }
    }
}

#[inline]
fn covers_words(h: &[u64], set: &[u64]) -> bool {
    h.iter()
        .zip(set)
        .map(|(a, b)| (a & b).count_ones())
        .sum::<u32>()
        == 1
}

/// Explicit list of every uncovered i-set, stored as packed column masks.
#[derive(Clone, Debug)]
struct Uncovered {
    stride: usize,
    // (i, flat masks of the still-uncovered i-sets)
    groups: Vec<(usize, Vec<u64>)>,
}

impl Uncovered {
    fn all(n: usize, sizes: std::ops::RangeInclusive<usize>) -> Self {
        let stride = n.div_ceil(64);
        let groups = sizes
            .map(|i| {
                let mut flat = Vec::with_capacity(binom_u128(n as u64, i as u64) as usize * stride);
                let mut mask = vec![0u64; stride];
                Colex::new(n, i).for_each(|s| {
                    fill_mask(s, &mut mask);
                    flat.extend_from_slice(&mask);
                });
                (i, flat)
            })
            .collect();
        Uncovered { stride, groups }
    }

    fn len(&self) -> u64 {
        self.groups
            .iter()
            .map(|(_, f)| (f.len() / self.stride) as u64)
            .sum()
    }

    fn counts(&self) -> Vec<(usize, u64)> {
        self.groups
            .iter()
            .map(|(i, f)| (*i, (f.len() / self.stride) as u64))
            .collect()
    }

    fn gain(&self, h: &[u64]) -> u64 {
        let stride = self.stride;
        self.groups
            .iter()
            .map(|(_, flat)| {
                flat.par_chunks(PAR_CHUNK * stride)
                    .map(|c| {
                        c.chunks_exact(stride)
                            .filter(|s| covers_words(h, s))
                            .count() as u64
                    })
                    .sum::<u64>()
            })
            .sum()
    }

    fn covers_any(&self, h: &[u64]) -> bool {
        let stride = self.stride;
        self.groups
            .iter()
            .any(|(_, flat)| flat.chunks_exact(stride).any(|s| covers_words(h, s)))
    }

    fn remove_covered(&mut self, h: &[u64]) -> u64 {
        let stride = self.stride;
        let mut removed = 0;
        for (_, flat) in self.groups.iter_mut() {
            let before = flat.len();
            let mut kept = Vec::with_capacity(before);
            for s in flat.chunks_exact(stride) {
                if !covers_words(h, s) {
                    kept.extend_from_slice(s);
                }
            }
            removed += ((before - kept.len()) / stride) as u64;
            *flat = kept;
        }
        removed
    }
}

/// A partially built matrix with its uncovered sets and rank deficiency.
#[derive(Clone, Debug)]
pub struct BuilderState {
    r: usize,
    rows: BitMatrix,
    basis: EchelonBasis,
    uncovered: Uncovered,
}

impl BuilderState {
    /// The empty matrix for a code of length `n` and redundancy `r`, tracking
    /// i-sets of size `3..=l−1`.
    ///
    /// # Errors
    /// Fails if materialising the i-sets exceeds the budget.
    pub fn new(n: usize, r: usize, l: usize, budget: &Budget) -> Result<Self> {
        let hi = l.saturating_sub(1).min(n);
        let sets: u128 = (3..=hi).map(|i| binom_u128(n as u64, i as u64)).sum();
        budget.check(sets)?;
        Ok(BuilderState {
            r,
            rows: BitMatrix::new(n),
            basis: EchelonBasis::new(n),
            uncovered: Uncovered::all(n, 3..=hi),
        })
    }

    pub fn rows(&self) -> &BitMatrix {
        &self.rows
    }

    /// `η = r − rank`.
    pub fn rank_deficiency(&self) -> usize {
        self.r - self.basis.rank()
    }

    /// `δ = Σ_i |uncovered i-sets| + η`.
    pub fn delta(&self) -> u64 {
        self.uncovered.len() + self.rank_deficiency() as u64
    }

    /// `(i, number of uncovered i-sets)` for every tracked size.
    pub fn uncovered_by_size(&self) -> Vec<(usize, u64)> {
        self.uncovered.counts()
    }

    /// Decrease of `δ` if `h` were added.
    pub fn delta_drop(&self, h: &BitVector) -> u64 {
        self.uncovered.gain(h.words()) + u64::from(!self.basis.contains(h))
    }

    /// Appends `h`; returns the number of newly covered sets.
    pub fn add_row(&mut self, h: BitVector) -> u64 {
        let removed = self.uncovered.remove_covered(h.words());
        self.basis.insert(&h);
        self.rows.push_row(h);
        removed
    }

    fn complete_rank(&mut self, span: &Span) {
        if self.rank_deficiency() == 0 {
            return;
        }
        for v in span.iter().skip(1) {
            if !self.basis.contains(&v) {
                self.add_row(v);
                if self.rank_deficiency() == 0 {
                    return;
                }
            }
        }
    }
}

/// Outcome of an independent check of a candidate matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoppingReport {
    pub rows: usize,
    pub rank: usize,
    pub r: usize,
    pub stopping_distance: StoppingDistance,
    pub all_rows_in_dual: bool,
    pub target_l: usize,
    pub strategy: Option<String>,
    pub seed: Option<u64>,
    /// `δ` right after the random rows (randomized builder only).
    pub delta_after_step1: Option<u64>,
    /// Random rows drawn before derandomization.
    pub random_rows: Option<usize>,
    /// Step-2 additions that missed the expectation guarantee (must be 0).
    pub step_bound_violations: usize,
}

impl StoppingReport {
    /// Full rank, every row in the dual code and no stopping set below `l`.
    pub fn passed(&self) -> bool {
        self.rank == self.r
            && self.all_rows_in_dual
            && self.stopping_distance.value >= self.target_l
            && self.step_bound_violations == 0
    }
}

impl fmt::Display for StoppingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rows: {}", self.rows)?;
        writeln!(f, "rank: {} (r = {})", self.rank, self.r)?;
        writeln!(
            f,
            "stopping distance: {} (target {})",
            self.stopping_distance, self.target_l
        )?;
        writeln!(f, "all rows in dual: {}", self.all_rows_in_dual)?;
        if let Some(s) = &self.strategy {
            writeln!(f, "strategy: {s}")?;
        }
        if let Some(s) = self.seed {
            writeln!(f, "seed: {s}")?;
        }
        if let Some(t) = self.random_rows {
            writeln!(f, "random rows: {t}")?;
        }
        if let Some(d) = self.delta_after_step1 {
            writeln!(f, "delta after random rows: {d}")?;
        }
        write!(f, "verified: {}", if self.passed() { "yes" } else { "no" })
    }
}

/// Checks `m` against `code` from scratch: rank, membership of every row in
/// the dual code, and absence of stopping sets of size `< l`.
///
/// # Errors
/// Only the stopping-set search can fail, on budget.
pub fn verify(
    m: &BitMatrix,
    code: &LinearCode,
    l: usize,
    budget: &Budget,
) -> Result<StoppingReport> {
    let g = code.generator();
    let in_dual =
        m.n_cols() == code.n() && m.rows().iter().all(|h| g.rows().iter().all(|c| !h.dot(c)));
    let sd = if m.n_cols() == 0 {
        StoppingDistance {
            value: 0,
            kind: DistanceKind::Exact,
        }
    } else {
        stopping_distance(m, l.saturating_sub(1).max(1), budget)?
    };
    Ok(StoppingReport {
        rows: m.n_rows(),
        rank: m.rank(),
        r: code.r(),
        stopping_distance: sd,
        all_rows_in_dual: in_dual,
        target_l: l,
        strategy: None,
        seed: None,
        delta_after_step1: None,
        random_rows: None,
        step_bound_violations: 0,
    })
}

fn known_distance(code: &LinearCode) -> Result<usize> {
    if let Some(d) = code.d() {
        return Ok(d);
    }
    let mut c = code.clone();
    c.analyze()?;
    Ok(c.d().expect("analyze fills d"))
}

/// Dual words a greedy step may choose from, in tie-break order.
struct Pool {
    words: Vec<BitVector>,
    full: bool,
}

impl Pool {
    fn build(code: &LinearCode, seed: u64) -> Result<Self> {
        let span = code.dual_span()?;
        if code.r() <= FULL_POOL_MAX_R {
            return Ok(Pool {
                words: span.iter().skip(1).collect(),
                full: true,
            });
        }
        // parity-check rows, minimum-weight words, then a seeded sample
        let mut seen = std::collections::HashSet::new();
        let mut words = Vec::new();
        let mut push = |v: BitVector| {
            if !v.is_zero() && seen.insert(v.words().to_vec()) {
                words.push(v);
            }
        };
        code.h().rows().iter().cloned().for_each(&mut push);
        code.min_weight_dual_words()?
            .iter()
            .cloned()
            .for_each(&mut push);
        for idx in sample_indices(span.size() - 1, SAMPLED_POOL_SIZE, seed) {
            push(span.element(idx));
        }
        Ok(Pool { words, full: false })
    }

    /// Upper bound on the number of sets of size `3..=hi` one word covers:
    /// exact while nothing is covered yet.
    fn initial_bound(&self, n: usize, hi: usize, w: usize) -> u64 {
        (3..=hi)
            .map(|i| binom(n as u64 - w as u64, i as u64 - 1) * w as u64)
            .sum::<num_bigint::BigUint>()
            .try_into()
            .unwrap_or(u64::MAX)
    }
}

/// `count` distinct values from `1..=total`, by a sparse partial
/// Fisher–Yates shuffle driven by ChaCha8 seeded with `seed`.
pub fn sample_indices(total: u64, count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = (count as u64).min(total);
    let mut swapped: HashMap<u64, u64> = HashMap::new();
    let mut out = Vec::with_capacity(count as usize);
    for k in 0..count {
        let j = rng.gen_range(k..total);
        let at_j = *swapped.get(&j).unwrap_or(&j);
        let at_k = *swapped.get(&k).unwrap_or(&k);
        swapped.insert(j, at_k);
        out.push(at_j + 1);
    }
    out
}

/// Repeatedly adds the pool word with the largest `δ` drop until `δ = 0`.
///
/// Lazy evaluation: a word's drop can only shrink as rows are added, so a
/// stale value is an upper bound and only the heap top is ever rescored.
/// Ties go to the earlier pool word. Without `with_rank` the potential is
/// the uncovered count alone. `on_step` sees `(before, after, row count)`.
fn greedy_fill(
    state: &mut BuilderState,
    pool: &Pool,
    bounds: Vec<u64>,
    with_rank: bool,
    mut on_step: impl FnMut(u64, u64, usize),
) -> Result<()> {
    let potential = |s: &BuilderState| {
        s.uncovered.len()
            + if with_rank {
                s.rank_deficiency() as u64
            } else {
                0
            }
    };
    let mut heap: BinaryHeap<(u64, Reverse<usize>)> = bounds
        .into_iter()
        .enumerate()
        .map(|(k, b)| (b, Reverse(k)))
        .collect();
    while potential(state) > 0 {
        let Some((_, Reverse(k))) = heap.pop() else {
            return Err(Error::Consistency(
                "candidate pool exhausted before delta reached 0".into(),
            ));
        };
        let h = &pool.words[k];
        let drop =
            state.uncovered.gain(h.words()) + u64::from(with_rank && !state.basis.contains(h));
        let wins = match heap.peek() {
            None => true,
            Some(&(b, Reverse(k2))) => drop > b || (drop == b && k < k2),
        };
        if !wins {
            if drop > 0 {
                heap.push((drop, Reverse(k)));
            }
            continue;
        }
        if drop == 0 {
            return Err(Error::Consistency(
                "no candidate lowers delta; the pool cannot finish the matrix".into(),
            ));
        }
        let before = potential(state);
        state.add_row(pool.words[k].clone());
        on_step(before, potential(state), state.rows().n_rows());
    }
    Ok(())
}

fn check_level(code: &LinearCode, l: usize) -> Result<usize> {
    let d = known_distance(code)?;
    if d >= 4 && (l < 4 || l > d) {
        return Err(Error::precondition(format!(
            "need 4 <= l <= d = {d}, got l = {l}"
        )));
    }
    Ok(d)
}

fn rref_short_circuit(
    code: &LinearCode,
    d: usize,
    strategy: Option<String>,
    budget: &Budget,
) -> Result<(BitMatrix, StoppingReport)> {
    // with d <= 3 any parity-check matrix already reaches the distance
    let (m, _) = code.h().rref();
    let mut report = verify(&m, code, d, budget)?;
    report.strategy = strategy;
    Ok((m, report))
}

/// Greedy search from the empty matrix to stopping distance `≥ l`.
///
/// `seed` only matters when the candidate pool is sampled (`r > 16`).
pub fn greedy_extend(
    code: &LinearCode,
    l: usize,
    strategy: Strategy,
    seed: u64,
    budget: &Budget,
) -> Result<(BitMatrix, StoppingReport)> {
    let d = check_level(code, l)?;
    if d <= 3 {
        return rref_short_circuit(code, d, Some(strategy.to_string()), budget);
    }
    let span = code.dual_span()?;
    let mut state = BuilderState::new(code.n(), code.r(), l, budget)?;
    match strategy {
        Strategy::Lexicographic => {
            for v in span.iter().skip(1) {
                if state.uncovered.len() == 0 {
                    break;
                }
                if state.uncovered.covers_any(v.words()) {
                    state.add_row(v);
                }
            }
        }
        Strategy::MaxCoverage => {
            let pool = Pool::build(code, seed)?;
            let bounds = pool
                .words
                .iter()
                .map(|w| pool.initial_bound(code.n(), l - 1, w.weight()))
                .collect();
            // only coverage counts here; rank is completed afterwards
            greedy_fill(&mut state, &pool, bounds, false, |_, _, _| {})?;
        }
    }
    state.complete_rank(&span);
    let mut report = verify(state.rows(), code, l, budget)?;
    report.strategy = Some(strategy.to_string());
    report.seed = (strategy == Strategy::MaxCoverage && code.r() > FULL_POOL_MAX_R).then_some(seed);
    Ok((state.rows, report))
}

/// `t` distinct uniformly random dual words, then the derandomized greedy
/// completion that minimises `δ` at every step.
pub fn randomized_extend(
    code: &LinearCode,
    l: usize,
    t: usize,
    seed: u64,
    budget: &Budget,
) -> Result<(BitMatrix, StoppingReport)> {
    let d = check_level(code, l)?;
    let r = code.r();
    let span = code.dual_span()?;
    let nonzero = span.size() - 1;
    if t < r || t as u64 >= nonzero {
        return Err(Error::precondition(format!(
            "need r <= t < 2^r - 1, got t = {t} with r = {r}"
        )));
    }
    if d <= 3 {
        return rref_short_circuit(code, d, Some("randomized".into()), budget);
    }
    let mut state = BuilderState::new(code.n(), r, l, budget)?;
    let mut drawn = sample_indices(nonzero, t, seed);
    drawn.sort_unstable();
    for idx in drawn {
        state.add_row(span.element(idx));
    }
    let after_step1 = state.delta();

    let pool = Pool::build(code, seed)?;
    let bounds = pool
        .words
        .iter()
        .map(|w| {
            pool.initial_bound(code.n(), l - 1, w.weight())
                .saturating_add(1)
        })
        .collect();
    let check = pool.full && rank_condition(r, l);
    let two_r = 1i128 << r;
    let c = ((l - 1) as i128) << (r + 1 - l);
    let mut violations = 0;
    greedy_fill(&mut state, &pool, bounds, true, |old, new, m| {
        let m = m as i128;
        if check && (new as i128) * (two_r - m) > (old as i128) * (two_r - m - c).max(0) {
            violations += 1;
        }
    })?;
    let mut report = verify(state.rows(), code, l, budget)?;
    report.strategy = Some("randomized".into());
    report.seed = Some(seed);
    report.delta_after_step1 = Some(after_step1);
    report.random_rows = Some(t);
    report.step_bound_violations = violations;
    Ok((state.rows, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::golay24;

    fn hamming74() -> LinearCode {
        let h = BitMatrix::from_bit_rows(&[
            [1u8, 0, 1, 0, 1, 0, 1],
            [0, 1, 1, 0, 0, 1, 1],
            [0, 0, 0, 1, 1, 1, 1],
        ]);
        LinearCode::from_parity_check("hamming", h).unwrap()
    }

    #[test]
    fn sampling_is_distinct_and_reproducible() {
        let a = sample_indices(4095, 300, 9);
        let b = sample_indices(4095, 300, 9);
        assert_eq!(a, b);
        let mut s = a.clone();
        s.sort_unstable();
        s.dedup();
        assert_eq!(s.len(), 300);
        assert!(s.iter().all(|&x| (1..=4095).contains(&x)));
        let all = sample_indices(10, 50, 1);
        let mut all_sorted = all.clone();
        all_sorted.sort_unstable();
        assert_eq!(all_sorted, (1..=10).collect::<Vec<_>>());
    }

    #[test]
    fn delta_bookkeeping() {
        let code = golay24();
        let mut st = BuilderState::new(24, 12, 5, &Budget::default()).unwrap();
        assert_eq!(st.delta(), 2024 + 10626 + 12);
        let h = code.h().row(0).clone();
        // 8·C(16,2) three-sets, 8·C(16,3) four-sets, one rank step
        assert_eq!(st.delta_drop(&h), 960 + 4480 + 1);
        let before = st.delta();
        st.add_row(h.clone());
        assert_eq!(st.rank_deficiency(), 11);
        // adding the same row again changes nothing
        assert_eq!(st.delta_drop(&h), 0);
        assert!(st.delta() < before);
    }

    #[test]
    fn greedy_golay_level4() {
        let (m, rep) =
            greedy_extend(&golay24(), 4, Strategy::MaxCoverage, 0, &Budget::default()).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(m.n_rows() >= 12);
    }

    #[test]
    fn lexicographic_golay_level5() {
        let (_, rep) = greedy_extend(
            &golay24(),
            5,
            Strategy::Lexicographic,
            0,
            &Budget::default(),
        )
        .unwrap();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn short_circuit_for_small_distance() {
        let (m, rep) = greedy_extend(
            &hamming74(),
            4,
            Strategy::MaxCoverage,
            0,
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(m.n_rows(), 3);
        assert_eq!(rep.target_l, 3);
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn randomized_is_deterministic() {
        let code = golay24();
        let a = randomized_extend(&code, 6, 14, 5, &Budget::default()).unwrap();
        let b = randomized_extend(&code, 6, 14, 5, &Budget::default()).unwrap();
        assert_eq!(a.0, b.0);
        assert!(a.1.passed(), "{}", a.1);
        assert_eq!(a.1.step_bound_violations, 0);
    }

    #[test]
    fn max_coverage_stays_below_hierarchy_bounds() {
        let code = golay24();
        for l in 4..=7 {
            let (m, rep) =
                greedy_extend(&code, l, Strategy::MaxCoverage, 0, &Budget::default()).unwrap();
            assert!(rep.passed(), "{rep}");
            let bound = crate::bounds::bound_thm3(24, 12, 8, l, 2, None)
                .unwrap()
                .total;
            assert!(
                m.n_rows() <= bound,
                "l = {l}: {} rows > {bound}",
                m.n_rows()
            );
        }
    }

    #[test]
    fn conventional_golay_matrix_falls_short() {
        let code = golay24();
        let rep = verify(code.h(), &code, 8, &Budget::default()).unwrap();
        assert_eq!(
            rep.stopping_distance,
            StoppingDistance {
                value: 4,
                kind: DistanceKind::Exact
            }
        );
        assert!(rep.all_rows_in_dual && rep.rank == 12);
        assert!(!rep.passed());
        let rep = verify(code.h(), &code, 4, &Budget::default()).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn verify_flags_foreign_rows() {
        let code = golay24();
        let mut m = code.h().clone();
        m.push_row(BitVector::from_positions(24, [0]));
        let rep = verify(&m, &code, 4, &Budget::default()).unwrap();
        assert!(!rep.all_rows_in_dual);
        assert!(!rep.passed());
    }

    #[test]
    fn strategy_names_round_trip() {
        for s in [Strategy::Lexicographic, Strategy::MaxCoverage] {
            assert_eq!(s.to_string().parse::<Strategy>().unwrap(), s);
        }
        assert!("best".parse::<Strategy>().is_err());
    }
}
