//! k-subsets of {0, …, n−1} in colexicographic order.
//!
//! The colex rank of a sorted subset `c_0 < c_1 < … < c_{k−1}` is
//! `Σ C(c_j, j+1)`. Ranks are what parallel scans partition on, so a chunk
//! `[a, b)` can be started anywhere with [`Colex::starting_at`].

/// Exact binomial coefficient in `u128`, saturating on overflow.
pub fn binom_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        // acc * (n - j) is divisible by (j + 1) after the multiplication
        match acc.checked_mul((n - j) as u128) {
            Some(v) => acc = v / (j as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Colex rank of a sorted 0-based subset.
pub fn rank(subset: &[usize]) -> u128 {
    subset
        .iter()
        .enumerate()
        .map(|(j, &c)| binom_u128(c as u64, j as u64 + 1))
        .sum()
}

/// Inverse of [`rank`] for subsets of size `k`.
pub fn unrank(mut r: u128, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for j in (0..k).rev() {
        // largest c with C(c, j+1) <= r
        let mut c = j;
        while binom_u128(c as u64 + 1, j as u64 + 1) <= r {
            c += 1;
        }
        r -= binom_u128(c as u64, j as u64 + 1);
        out[j] = c;
    }
    out
}

/// Callback-driven walk over a range of k-subsets in colex order.
#[derive(Clone, Debug)]
pub struct Colex {
    n: usize,
    current: Vec<usize>,
    remaining: u128,
}

impl Colex {
    pub fn new(n: usize, k: usize) -> Self {
        Self::starting_at(n, k, 0, binom_u128(n as u64, k as u64))
    }

    /// Subsets with ranks in `start..start + count`, clipped to the total.
    pub fn starting_at(n: usize, k: usize, start: u128, count: u128) -> Self {
        let total = binom_u128(n as u64, k as u64);
        let remaining = if start >= total {
            0
        } else {
            count.min(total - start)
        };
        let current = if remaining > 0 {
            unrank(start, k)
        } else {
            Vec::new()
        };
        Colex {
            n,
            current,
            remaining,
        }
    }

    fn advance(&mut self) {
        let k = self.current.len();
        let mut j = 0;
        while j < k {
            let limit = if j + 1 < k {
                self.current[j + 1]
            } else {
                self.n
            };
            if self.current[j] + 1 < limit {
                self.current[j] += 1;
                for (i, c) in self.current.iter_mut().enumerate().take(j) {
                    *c = i;
                }
                return;
            }
            j += 1;
        }
    }

    /// Calls `f` on every subset of the range, in order.
    pub fn for_each(mut self, mut f: impl FnMut(&[usize])) {
        if self.remaining == 0 {
            return;
        }
        loop {
            f(&self.current);
            self.remaining -= 1;
            if self.remaining == 0 {
                break;
            }
            self.advance();
        }
    }

    /// Like [`Colex::for_each`] but stops as soon as `f` returns true.
    pub fn any(mut self, mut f: impl FnMut(&[usize]) -> bool) -> bool {
        if self.remaining == 0 {
            return false;
        }
        loop {
            if f(&self.current) {
                return true;
            }
            self.remaining -= 1;
            if self.remaining == 0 {
                return false;
            }
            self.advance();
        }
    }
}

/// Fixed partition of `0..total` into chunks of at most `step`.
pub(crate) fn chunks(total: u128, step: u128) -> Vec<(u128, u128)> {
    let mut out = Vec::new();
    let mut s = 0;
    while s < total {
        let len = step.min(total - s);
        out.push((s, len));
        s += len;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom_u128(24, 3), 2024);
        assert_eq!(binom_u128(48, 11), 22_595_200_368);
        assert_eq!(binom_u128(5, 0), 1);
        assert_eq!(binom_u128(3, 5), 0);
    }

    #[test]
    fn colex_order_small() {
        let mut seen = Vec::new();
        Colex::new(4, 2).for_each(|s| seen.push(s.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 3],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        for (r, s) in seen.iter().enumerate() {
            assert_eq!(rank(s), r as u128);
            assert_eq!(unrank(r as u128, 2), *s);
        }
    }

    #[test]
    fn chunked_walk_equals_full_walk() {
        let (n, k) = (11, 4);
        let mut full = Vec::new();
        Colex::new(n, k).for_each(|s| full.push(s.to_vec()));
        assert_eq!(full.len() as u128, binom_u128(n as u64, k as u64));
        let mut pieces = Vec::new();
        for (s, len) in chunks(full.len() as u128, 37) {
            Colex::starting_at(n, k, s, len).for_each(|x| pieces.push(x.to_vec()));
        }
        assert_eq!(full, pieces);
    }

    #[test]
    fn zero_size_subsets() {
        let mut count = 0;
        Colex::new(5, 0).for_each(|s| {
            assert!(s.is_empty());
            count += 1
        });
        assert_eq!(count, 1);
        let mut none = 0;
        Colex::new(2, 3).for_each(|_| none += 1);
        assert_eq!(none, 0);
    }
}
