//! Coverage of i-sets, stopping sets and stopping distance.
//!
//! A row covers a set of columns when it has exactly one 1 inside that set.
//! A set no row covers is a stopping set. All column indices here are
//! 1-based.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::budget::Budget;
use crate::combinadic::{binom_u128, chunks, Colex};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

const CHUNK: u128 = 1 << 15;

/// A set of distinct 1-based column indices, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ISet {
    indices: Vec<usize>,
}

impl ISet {
    /// # Errors
    /// Fails on an index outside `1..=n` or a repeated index.
    pub fn new(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        indices.sort_unstable();
        if let Some(&bad) = indices.iter().find(|&&j| j == 0 || j > n) {
            return Err(Error::precondition(format!(
                "column {bad} outside [1, {n}]"
            )));
        }
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::precondition("repeated column in i-set"));
        }
        Ok(ISet { indices })
    }

    fn from_zero_based(subset: &[usize]) -> Self {
        ISet {
            indices: subset.iter().map(|&c| c + 1).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn mask(&self, n: usize) -> BitVector {
        BitVector::from_positions(n, self.indices.iter().map(|&j| j - 1))
    }
}

/// True iff exactly one index of `set` hits a 1 in `h`.
pub fn covers(h: &BitVector, set: &ISet) -> bool {
    let mut hits = 0;
    for &j in set.indices() {
        if h.get(j - 1) {
            hits += 1;
            if hits > 1 {
                return false;
            }
        }
    }
    hits == 1
}

/// True iff no row of `m` covers `set`.
pub fn is_stopping_set(m: &BitMatrix, set: &ISet) -> bool {
    !m.rows().iter().any(|h| covers(h, set))
}

/// Row words laid out contiguously for the inner covering loop.
pub(crate) struct PackedRows {
    stride: usize,
    words: Vec<u64>,
}

impl PackedRows {
    pub(crate) fn new(m: &BitMatrix) -> Self {
        let stride = m.n_cols().div_ceil(64);
        let mut words = Vec::with_capacity(stride * m.n_rows());
        for r in m.rows() {
            words.extend_from_slice(r.words());
        }
        PackedRows { stride, words }
    }

    #[inline]
    pub(crate) fn any_covers(&self, set: &[u64]) -> bool {
        if self.stride == 1 {
            let s = set[0];
            return self.words.iter().any(|&h| (h & s).count_ones() == 1);
        }
        self.words.chunks_exact(self.stride).any(|h| {
            h.iter()
                .zip(set)
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                == 1
        })
    }
}

#[inline]
pub(crate) fn fill_mask(subset: &[usize], mask: &mut [u64]) {
    mask.iter_mut().for_each(|w| *w = 0);
    for &c in subset {
        mask[c / 64] |= 1u64 << (c % 64);
    }
}

/// Exact or analytic counts `u_i` of uncovered i-sets for `i` in a range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageProfile {
    i_lo: usize,
    i_hi: usize,
    u: Vec<BigUint>,
    source_rows: BitMatrix,
    exact: bool,
}

impl CoverageProfile {
    /// Builds a profile from explicit values; `u[0]` is `u_{i_lo}`.
    ///
    /// An empty range (`i_hi < i_lo`) is allowed and carries no values.
    pub fn new(i_lo: usize, u: Vec<BigUint>, source_rows: BitMatrix, exact: bool) -> Self {
        let i_hi = (i_lo + u.len()).saturating_sub(1);
        CoverageProfile {
            i_lo,
            i_hi: if u.is_empty() {
                i_lo.saturating_sub(1)
            } else {
                i_hi
            },
            u,
            source_rows,
            exact,
        }
    }

    pub fn i_lo(&self) -> usize {
        self.i_lo
    }

    pub fn i_hi(&self) -> usize {
        self.i_hi
    }

    /// `u_i`, or `None` outside the range.
    pub fn get(&self, i: usize) -> Option<&BigUint> {
        if i < self.i_lo || i > self.i_hi {
            None
        } else {
            self.u.get(i - self.i_lo)
        }
    }

    /// `(i, u_i)` pairs in ascending `i`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.u
            .iter()
            .enumerate()
            .map(move |(k, v)| (self.i_lo + k, v))
    }

    pub fn source_rows(&self) -> &BitMatrix {
        &self.source_rows
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// The same counts restricted to `[i_lo, hi]`.
    pub fn truncated(&self, hi: usize) -> CoverageProfile {
        let keep = (hi + 1).saturating_sub(self.i_lo).min(self.u.len());
        CoverageProfile::new(
            self.i_lo,
            self.u[..keep].to_vec(),
            self.source_rows.clone(),
            self.exact,
        )
    }
}

fn worst_case_tests(n: usize, sizes: impl Iterator<Item = usize>, rows: usize) -> u128 {
    sizes
        .map(|i| binom_u128(n as u64, i as u64))
        .fold(0u128, |a, b| a.saturating_add(b))
        .saturating_mul(rows.max(1) as u128)
}

/// Uncovered i-sets of size `i`, counted exactly.
fn count_uncovered(packed: &PackedRows, n: usize, i: usize) -> u64 {
    let total = binom_u128(n as u64, i as u64);
    let stride = n.div_ceil(64).max(1);
    chunks(total, CHUNK)
        .into_par_iter()
        .map(|(start, len)| {
            let mut mask = vec![0u64; stride];
            let mut count = 0u64;
            Colex::starting_at(n, i, start, len).for_each(|s| {
                fill_mask(s, &mut mask);
                if !packed.any_covers(&mask) {
                    count += 1;
                }
            });
            count
        })
        .sum()
}

/// Exact `u_i = #{S : |S| = i, no row of m covers S}` for `i_lo ≤ i ≤ i_hi`.
///
/// # Errors
/// Fails if the worst-case number of (set, row) tests exceeds the budget.
pub fn uncovered_counts(
    m: &BitMatrix,
    i_lo: usize,
    i_hi: usize,
    budget: &Budget,
) -> Result<CoverageProfile> {
    let n = m.n_cols();
    if i_lo == 0 || i_hi > n {
        return Err(Error::precondition(format!(
            "i-set sizes must lie in [1, {n}], got [{i_lo}, {i_hi}]"
        )));
    }
    budget.check(worst_case_tests(n, i_lo..=i_hi, m.n_rows()))?;
    let packed = PackedRows::new(m);
    let u = (i_lo..=i_hi)
        .map(|i| BigUint::from(count_uncovered(&packed, n, i)))
        .collect();
    Ok(CoverageProfile::new(i_lo, u, m.clone(), true))
}

/// Whether a stopping-distance search found the value or ran out of range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceKind {
    Exact,
    AtLeast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StoppingDistance {
    pub value: usize,
    pub kind: DistanceKind,
}

impl std::fmt::Display for StoppingDistance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            DistanceKind::Exact => write!(f, "{}", self.value),
            DistanceKind::AtLeast => write!(f, "≥{}", self.value),
        }
    }
}

/// Smallest stopping set of `m` among sizes `1..=limit`.
pub fn find_stopping_set(m: &BitMatrix, limit: usize, budget: &Budget) -> Result<Option<ISet>> {
    let n = m.n_cols();
    let top = limit.min(n);
    budget.check(worst_case_tests(n, 1..=top, m.n_rows()))?;
    let packed = PackedRows::new(m);
    let stride = n.div_ceil(64).max(1);
    for s in 1..=top {
        let total = binom_u128(n as u64, s as u64);
        // first stopping set in colex order; chunks are scanned independently
        let found = chunks(total, CHUNK)
            .into_par_iter()
            .map(|(start, len)| {
                let mut mask = vec![0u64; stride];
                let mut hit = None;
                Colex::starting_at(n, s, start, len).any(|set| {
                    fill_mask(set, &mut mask);
                    if packed.any_covers(&mask) {
                        false
                    } else {
                        hit = Some(ISet::from_zero_based(set));
                        true
                    }
                });
                hit
            })
            .find_first(|h| h.is_some())
            .flatten();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Size of the smallest stopping set, searching sizes `1..=limit`.
///
/// Returns `(limit + 1, AtLeast)` when no stopping set of size up to `limit`
/// exists.
pub fn stopping_distance(m: &BitMatrix, limit: usize, budget: &Budget) -> Result<StoppingDistance> {
    if limit == 0 {
        return Err(Error::precondition(
            "stopping-distance limit must be at least 1",
        ));
    }
    Ok(match find_stopping_set(m, limit, budget)? {
        Some(s) => StoppingDistance {
            value: s.size(),
            kind: DistanceKind::Exact,
        },
        None => StoppingDistance {
            value: limit + 1,
            kind: DistanceKind::AtLeast,
        },
    })
}
