//! Dense linear algebra over GF(2) on bit-packed rows.
//!
//! Vectors pack 64 columns per `u64` word. Bit positions on [`BitVector`] are
//! 0-based like any Rust container; everything that talks about matrix
//! *columns* (pivot lists, i-sets, file formats) uses 1-based indices.
//!
//! Span enumeration walks the row space of an independent basis in Gray-code
//! order: element number `g` is the sum of the basis rows selected by the bits
//! of `g ^ (g >> 1)`, so consecutive elements differ by one row. Element 0 is
//! the zero vector. Every tie-break in the crate that refers to an
//! "enumeration index" means this index.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Hard cap on the number of basis rows a span may be enumerated for.
pub const MAX_SPAN_ROWS: usize = 28;

/// Default cap on the number of minimum-weight words kept by [`min_weight_census`].
pub const DEFAULT_CENSUS_WORD_LIMIT: usize = 1 << 16;

const CHUNK_BITS: u32 = 16;

#[inline]
fn word_count(n: usize) -> usize {
    n.div_ceil(64)
}

/// A row vector in GF(2)^n.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    words: Vec<u64>,
    n: usize,
}

impl BitVector {
    pub fn zeros(n: usize) -> Self {
        BitVector {
            words: vec![0; word_count(n)],
            n,
        }
    }

    pub fn ones(n: usize) -> Self {
        let mut v = Self::zeros(n);
        for b in 0..n {
            v.set(b, true);
        }
        v
    }

    /// Builds a vector from 0/1 values; any nonzero entry counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (b, &x) in bits.iter().enumerate() {
            if x != 0 {
                v.set(b, true);
            }
        }
        v
    }

    /// Builds a vector of length `n` with ones at the given 0-based positions.
    ///
    /// # Panics
    /// Panics if a position is `>= n`.
    pub fn from_positions(n: usize, positions: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(n);
        for p in positions {
            v.set(p, true);
        }
        v
    }

    /// Builds a vector from packed words, masking anything beyond column `n`.
    pub fn from_words(n: usize, mut words: Vec<u64>) -> Self {
        words.resize(word_count(n), 0);
        let mut v = BitVector { words, n };
        v.mask_tail();
        v
    }

    fn mask_tail(&mut self) {
        let rem = self.n % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// # Panics
    /// Panics if `bit >= len()`.
    #[inline]
    pub fn get(&self, bit: usize) -> bool {
        assert!(bit < self.n, "bit {bit} out of range (n = {})", self.n);
        (self.words[bit / 64] >> (bit % 64)) & 1 == 1
    }

    /// # Panics
    /// Panics if `bit >= len()`.
    #[inline]
    pub fn set(&mut self, bit: usize, value: bool) {
        assert!(bit < self.n, "bit {bit} out of range (n = {})", self.n);
        let mask = 1u64 << (bit % 64);
        if value {
            self.words[bit / 64] |= mask;
        } else {
            self.words[bit / 64] &= !mask;
        }
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Adds `other` into `self` (XOR).
    ///
    /// # Panics
    /// Panics if the lengths differ.
    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.n, other.n, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Number of positions where both vectors are 1.
    #[inline]
    pub fn overlap(&self, other: &BitVector) -> usize {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Inner product over GF(2).
    #[inline]
    pub fn dot(&self, other: &BitVector) -> bool {
        let parity = self
            .words
            .iter()
            .zip(&other.words)
            .fold(0u64, |acc, (a, b)| acc ^ (a & b));
        parity.count_ones() % 2 == 1
    }

    /// 0-based positions of the ones, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Lowest set position, if any.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(wi, &w)| wi * 64 + w.trailing_zeros() as usize)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in 0..self.n {
            f.write_str(if self.get(b) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// A binary matrix stored as a list of rows. Row count may exceed `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
    n: usize,
}

impl BitMatrix {
    /// An empty matrix with `n` columns.
    pub fn new(n: usize) -> Self {
        BitMatrix {
            rows: Vec::new(),
            n,
        }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| BitVector::from_positions(n, [i])).collect();
        BitMatrix { rows, n }
    }

    /// # Errors
    /// Fails if the rows do not all have length `n`.
    pub fn from_rows(n: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::precondition(format!(
                "row {} has {} columns, expected {n}",
                i + 1,
                r.len()
            )));
        }
        Ok(BitMatrix { rows, n })
    }

    /// Builds a matrix from rows of 0/1 values.
    ///
    /// # Panics
    /// Panics on ragged input; meant for literals.
    pub fn from_bit_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let rows: Vec<_> = rows
            .iter()
            .map(|r| BitVector::from_bits(r.as_ref()))
            .collect();
        Self::from_rows(n, rows).expect("ragged literal matrix")
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    #[inline]
    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    /// # Panics
    /// Panics if the row length differs from `n_cols()`.
    pub fn push_row(&mut self, row: BitVector) {
        assert_eq!(row.len(), self.n, "row length mismatch");
        self.rows.push(row);
    }

    /// The first `count` rows as a new matrix.
    pub fn take_rows(&self, count: usize) -> BitMatrix {
        BitMatrix {
            rows: self.rows[..count.min(self.rows.len())].to_vec(),
            n: self.n,
        }
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new(self.n);
        self.rows.iter().filter(|r| basis.insert(r)).count()
    }

    /// Reduced row echelon form and its 1-based pivot columns.
    ///
    /// Zero rows are dropped, so the result has exactly `rank()` rows. An
    /// all-zero input yields a matrix with no rows and no pivots.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..self.n {
            let Some(p) = (top..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(top, p);
            let pivot_row = rows[top].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != top && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col + 1);
            top += 1;
            if top == rows.len() {
                break;
            }
        }
        rows.truncate(top);
        (BitMatrix { rows, n: self.n }, pivots)
    }

    /// A basis of all vectors orthogonal to every row (the dual of the row space).
    pub fn nullspace_basis(&self) -> BitMatrix {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.n];
        for &p in &pivots {
            is_pivot[p - 1] = true;
        }
        let mut out = BitMatrix::new(self.n);
        for free in (0..self.n).filter(|&c| !is_pivot[c]) {
            let mut v = BitVector::zeros(self.n);
            v.set(free, true);
            for (row, &p) in reduced.rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p - 1, true);
                }
            }
            out.rows.push(v);
        }
        out
    }

    /// Whether `v` lies in the row space.
    pub fn spans(&self, v: &BitVector) -> bool {
        let mut basis = EchelonBasis::new(self.n);
        for r in &self.rows {
            basis.insert(r);
        }
        basis.contains(v)
    }

    /// True when every row of `self` is orthogonal to every row of `other`.
    pub fn is_orthogonal_to(&self, other: &BitMatrix) -> bool {
        self.rows
            .iter()
            .all(|a| other.rows.iter().all(|b| !a.dot(b)))
    }

    /// True when both matrices generate the same row space.
    pub fn same_row_space(&self, other: &BitMatrix) -> bool {
        self.n == other.n && self.rref().0 == other.rref().0
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows.len(), self.n)?;
        fmt::Display::fmt(self, f)
    }
}

/// Incremental echelon basis used for rank tracking while rows are added.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    n: usize,
    // Each stored row has its pivot at the position recorded alongside it,
    // and no other stored row has a one there.
    rows: Vec<(usize, BitVector)>,
}

impl EchelonBasis {
    pub fn new(n: usize) -> Self {
        EchelonBasis {
            n,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &BitVector) -> BitVector {
        let mut v = v.clone();
        for (p, row) in &self.rows {
            if v.get(*p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns true if the rank went up.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        debug_assert_eq!(v.len(), self.n);
        let v = self.reduce(v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for (_, row) in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        self.rows.push((p, v));
        true
    }
}

#[inline]
pub fn gray(index: u64) -> u64 {
    index ^ (index >> 1)
}

/// A validated, linearly independent basis whose span can be walked.
#[derive(Clone, Debug)]
pub struct Span {
    basis: BitMatrix,
}

impl Span {
    /// # Errors
    /// Fails if the basis is empty, dependent, or has more than
    /// [`MAX_SPAN_ROWS`] rows.
    pub fn new(basis: &BitMatrix) -> Result<Self> {
        if basis.n_rows() > MAX_SPAN_ROWS {
            return Err(Error::Budget {
                needed: 1u128 << basis.n_rows(),
                budget: 1u128 << MAX_SPAN_ROWS,
            });
        }
        if basis.rank() != basis.n_rows() {
            return Err(Error::precondition(
                "span basis rows are linearly dependent",
            ));
        }
        Ok(Span {
            basis: basis.clone(),
        })
    }

    pub fn basis(&self) -> &BitMatrix {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.n_rows()
    }

    /// Number of elements, `2^dimension`.
    pub fn size(&self) -> u64 {
        1u64 << self.basis.n_rows()
    }

    /// The element at a given enumeration index.
    pub fn element(&self, index: u64) -> BitVector {
        assert!(index < self.size(), "span index out of range");
        let mut v = BitVector::zeros(self.basis.n_cols());
        let mut g = gray(index);
        while g != 0 {
            let b = g.trailing_zeros() as usize;
            v.xor_assign(self.basis.row(b));
            g &= g - 1;
        }
        v
    }

    /// Calls `visit(index, words)` for every index in `start..end`, in order.
    pub fn walk_range(&self, start: u64, end: u64, mut visit: impl FnMut(u64, &[u64])) {
        let end = end.min(self.size());
        if start >= end {
            return;
        }
        let mut cur = self.element(start);
        let mut words = std::mem::take(&mut cur.words);
        visit(start, &words);
        for idx in start + 1..end {
            let b = idx.trailing_zeros() as usize;
            for (w, r) in words.iter_mut().zip(self.basis.row(b).words()) {
                *w ^= r;
            }
            visit(idx, &words);
        }
    }

    /// Iterator over all elements in enumeration order.
    pub fn iter(&self) -> SpanIter<'_> {
        self.iter_range(0, self.size())
    }

    /// Iterator over the elements with indices in `start..end`.
    pub fn iter_range(&self, start: u64, end: u64) -> SpanIter<'_> {
        SpanIter {
            span: self,
            next: start,
            end: end.min(self.size()),
            current: None,
        }
    }

    /// Fixed partition of `1..size` used by parallel scans.
    pub(crate) fn nonzero_chunks(&self) -> Vec<(u64, u64)> {
        let size = self.size();
        let step = 1u64 << CHUNK_BITS;
        let mut out = Vec::new();
        let mut s = 1;
        while s < size {
            let e = (s + step).min(size);
            out.push((s, e));
            s = e;
        }
        out
    }
}

/// Iterator returned by [`Span::iter`] and [`enumerate_span`].
pub struct SpanIter<'a> {
    span: &'a Span,
    next: u64,
    end: u64,
    current: Option<BitVector>,
}

impl Iterator for SpanIter<'_> {
    type Item = BitVector;

    fn next(&mut self) -> Option<BitVector> {
        if self.next >= self.end {
            return None;
        }
        let idx = self.next;
        let v = match self.current.take() {
            Some(mut prev) => {
                prev.xor_assign(self.span.basis.row(idx.trailing_zeros() as usize));
                prev
            }
            None => self.span.element(idx),
        };
        self.current = Some(v.clone());
        self.next += 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rem = (self.end - self.next) as usize;
        (rem, Some(rem))
    }
}

/// All `2^rows` elements of the row space of `basis`, zero first, in Gray order.
pub fn enumerate_span(basis: &BitMatrix) -> Result<Vec<BitVector>> {
    Ok(Span::new(basis)?.iter().collect())
}

/// Minimum nonzero weight of a span and the words attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub min_weight: usize,
    /// Exact number of words of minimum weight.
    pub count: u64,
    /// Minimum-weight words in enumeration order, truncated to the word limit.
    pub words: Vec<BitVector>,
}

#[derive(Clone, Debug)]
struct PartialCensus {
    min_weight: usize,
    count: u64,
    words: Vec<(u64, Vec<u64>)>,
}

impl PartialCensus {
    fn merge(mut self, other: PartialCensus, limit: usize) -> PartialCensus {
        use std::cmp::Ordering::*;
        match other.min_weight.cmp(&self.min_weight) {
            Less => other,
            Greater => self,
            Equal => {
                self.count += other.count;
                let room = limit.saturating_sub(self.words.len());
                self.words.extend(other.words.into_iter().take(room));
                self
            }
        }
    }
}

/// Census with the default word limit.
pub fn min_weight_census(basis: &BitMatrix) -> Result<Census> {
    min_weight_census_with_limit(basis, DEFAULT_CENSUS_WORD_LIMIT)
}

/// Minimum weight over the nonzero span of `basis`, the exact count of words
/// of that weight, and up to `limit` of those words.
pub fn min_weight_census_with_limit(basis: &BitMatrix, limit: usize) -> Result<Census> {
    let span = Span::new(basis)?;
    if span.dimension() == 0 {
        return Err(Error::precondition("census of a zero-dimensional span"));
    }
    let n = basis.n_cols();
    let partials: Vec<PartialCensus> = span
        .nonzero_chunks()
        .into_par_iter()
        .map(|(s, e)| {
            let mut pc = PartialCensus {
                min_weight: usize::MAX,
                count: 0,
                words: Vec::new(),
            };
            span.walk_range(s, e, |idx, w| {
                let wt: usize = w.iter().map(|x| x.count_ones() as usize).sum();
                if wt < pc.min_weight {
                    pc.min_weight = wt;
                    pc.count = 0;
                    pc.words.clear();
                }
                if wt == pc.min_weight {
                    pc.count += 1;
                    if pc.words.len() < limit {
                        pc.words.push((idx, w.to_vec()));
                    }
                }
            });
            pc
        })
        .collect();
    let total = partials
        .into_iter()
        .reduce(|a, b| a.merge(b, limit))
        .expect("at least one chunk");
    Ok(Census {
        min_weight: total.min_weight,
        count: total.count,
        words: total
            .words
            .into_iter()
            .map(|(_, w)| BitVector::from_words(n, w))
            .collect(),
    })
}

/// Weight histogram of the whole span (index = weight).
pub fn weight_distribution(basis: &BitMatrix) -> Result<Vec<u64>> {
    let span = Span::new(basis)?;
    let n = basis.n_cols();
    let parts: Vec<Vec<u64>> = span
        .nonzero_chunks()
        .into_par_iter()
        .map(|(s, e)| {
            let mut h = vec![0u64; n + 1];
            span.walk_range(s, e, |_, w| {
                h[w.iter().map(|x| x.count_ones() as usize).sum::<usize>()] += 1;
            });
            h
        })
        .collect();
    let mut hist = vec![0u64; n + 1];
    hist[0] = 1;
    for p in parts {
        for (a, b) in hist.iter_mut().zip(p) {
            *a += b;
        }
    }
    Ok(hist)
}
