//! The alist sparse matrix format.
//!
//! ```text
//! n m                      columns, rows
//! max_col_deg max_row_deg
//! <n column degrees>
//! <m row degrees>
//! <n lines: 1-based row indices of each column, zero-padded to max_col_deg>
//! <m lines: 1-based column indices of each row, zero-padded to max_row_deg>
//! ```
//!
//! Output uses single spaces and LF endings. On input, missing padding is
//! tolerated but every list must agree with its degree and with the other
//! orientation.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next line as (line number, [(column, value)]).
    fn next_numbers(&mut self, what: &str) -> Result<(usize, Vec<(usize, usize)>)> {
        let Some((i, line)) = self.inner.next() else {
            return Err(Error::parse(
                self.last + 1,
                1,
                format!("unexpected end of input, expected {what}"),
            ));
        };
        self.last = i + 1;
        let mut out = Vec::new();
        let mut col = 0;
        for tok in line.split_whitespace() {
            let offset = line[col..].find(tok).map_or(col, |p| col + p);
            col = offset + tok.len();
            let v = tok.parse::<usize>().map_err(|_| {
                Error::parse(
                    i + 1,
                    offset + 1,
                    format!("{tok:?} is not a nonnegative integer"),
                )
            })?;
            out.push((offset + 1, v));
        }
        Ok((i + 1, out))
    }

    fn expect_count(&mut self, what: &str, count: usize) -> Result<(usize, Vec<(usize, usize)>)> {
        let (ln, nums) = self.next_numbers(what)?;
        if nums.len() != count {
            return Err(Error::parse(
                ln,
                1,
                format!("{what}: expected {count} numbers, found {}", nums.len()),
            ));
        }
        Ok((ln, nums))
    }
}

/// Reads one index list of the given degree; entries past the degree must be 0.
fn read_list(
    lines: &mut Lines<'_>,
    what: &str,
    degree: usize,
    max_degree: usize,
    bound: usize,
) -> Result<Vec<usize>> {
    let (ln, nums) = lines.next_numbers(what)?;
    if nums.len() < degree || nums.len() > max_degree.max(degree) {
        return Err(Error::parse(
            ln,
            1,
            format!(
                "{what}: {} entries for degree {degree} (max {max_degree})",
                nums.len()
            ),
        ));
    }
    let mut out = Vec::with_capacity(degree);
    for (k, &(col, v)) in nums.iter().enumerate() {
        if k < degree {
            if v == 0 {
                return Err(Error::parse(
                    ln,
                    col,
                    format!("{what}: index 0 inside a degree-{degree} list"),
                ));
            }
            if v > bound {
                return Err(Error::parse(
                    ln,
                    col,
                    format!("{what}: index {v} out of range 1..={bound}"),
                ));
            }
            if out.contains(&v) {
                return Err(Error::parse(ln, col, format!("{what}: repeated index {v}")));
            }
            out.push(v);
        } else if v != 0 {
            return Err(Error::parse(
                ln,
                col,
                format!("{what}: nonzero entry {v} beyond degree {degree}"),
            ));
        }
    }
    Ok(out)
}

pub fn load_alist(text: &str) -> Result<BitMatrix> {
    let mut lines = Lines::new(text);
    let (ln, dims) = lines.expect_count("dimensions", 2)?;
    let (n, m) = (dims[0].1, dims[1].1);
    if n == 0 || m == 0 {
        return Err(Error::parse(ln, 1, "zero dimensions"));
    }
    let (ln_max, maxes) = lines.expect_count("maximum degrees", 2)?;
    let (max_col, max_row) = (maxes[0].1, maxes[1].1);
    let (ln_cd, col_deg) = lines.expect_count("column degrees", n)?;
    let (ln_rd, row_deg) = lines.expect_count("row degrees", m)?;
    let col_deg: Vec<usize> = col_deg.into_iter().map(|(_, v)| v).collect();
    let row_deg: Vec<usize> = row_deg.into_iter().map(|(_, v)| v).collect();
    if col_deg.iter().copied().max().unwrap_or(0) != max_col {
        return Err(Error::parse(
            ln_cd,
            1,
            format!("column degrees disagree with maximum {max_col} on line {ln_max}"),
        ));
    }
    if row_deg.iter().copied().max().unwrap_or(0) != max_row {
        return Err(Error::parse(
            ln_rd,
            1,
            format!("row degrees disagree with maximum {max_row} on line {ln_max}"),
        ));
    }
    if col_deg.iter().sum::<usize>() != row_deg.iter().sum::<usize>() {
        return Err(Error::parse(
            ln_rd,
            1,
            "column and row degree totals differ",
        ));
    }

    let mut rows = vec![BitVector::zeros(n); m];
    for (j, &deg) in col_deg.iter().enumerate() {
        for i in read_list(&mut lines, &format!("column {}", j + 1), deg, max_col, m)? {
            rows[i - 1].set(j, true);
        }
    }
    for (i, &deg) in row_deg.iter().enumerate() {
        let what = format!("row {}", i + 1);
        let list = read_list(&mut lines, &what, deg, max_row, n)?;
        let ln = lines.last;
        let mut from_rows = BitVector::zeros(n);
        for j in list {
            from_rows.set(j - 1, true);
        }
        if from_rows != rows[i] {
            return Err(Error::parse(
                ln,
                1,
                format!("{what}: inconsistent with the column lists"),
            ));
        }
    }
    for (i, line) in lines.inner {
        if !line.trim().is_empty() {
            return Err(Error::parse(i + 1, 1, "trailing content after row lists"));
        }
    }
    BitMatrix::from_rows(n, rows)
}

fn join(nums: impl IntoIterator<Item = usize>) -> String {
    nums.into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn padded(mut list: Vec<usize>, width: usize) -> String {
    list.resize(width, 0);
    join(list)
}

/// # Panics
/// Panics on a matrix with zero rows or columns, which alist cannot express.
pub fn save_alist(m: &BitMatrix) -> String {
    let (n, rows) = (m.n_cols(), m.n_rows());
    assert!(n > 0 && rows > 0, "zero dimensions");
    let col_lists: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            (0..rows)
                .filter(|&i| m.row(i).get(j))
                .map(|i| i + 1)
                .collect()
        })
        .collect();
    let row_lists: Vec<Vec<usize>> = m
        .rows()
        .iter()
        .map(|r| r.support().map(|j| j + 1).collect())
        .collect();
    let max_col = col_lists.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = row_lists.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = Vec::with_capacity(4 + n + rows);
    out.push(format!("{n} {rows}"));
    out.push(format!("{max_col} {max_row}"));
    out.push(join(col_lists.iter().map(Vec::len)));
    out.push(join(row_lists.iter().map(Vec::len)));
    out.extend(col_lists.into_iter().map(|l| padded(l, max_col)));
    out.extend(row_lists.into_iter().map(|l| padded(l, max_row)));
    let mut text = out.join("\n");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    // rows 110 / 011, encoded by hand
    const SMALL: &str = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n";

    fn small() -> BitMatrix {
        BitMatrix::from_bit_rows(&[[1u8, 1, 0], [0, 1, 1]])
    }

    #[test]
    fn hand_encoded_example() {
        assert_eq!(save_alist(&small()), SMALL);
        assert_eq!(load_alist(SMALL).unwrap(), small());
    }

    #[test]
    fn unpadded_input_accepted() {
        let text = "3 2\n2 2\n1 2 1\n2 2\n1\n1 2\n2\n1 2\n2 3\n";
        assert_eq!(load_alist(text).unwrap(), small());
    }

    #[test]
    fn zero_dimensions() {
        let err = load_alist("0 2\n").unwrap_err();
        assert!(err.to_string().contains("zero dimensions"), "{err}");
    }

    #[test]
    fn zero_inside_list() {
        let text = "3 2\n2 2\n1 2 1\n2 2\n1 0\n0 2\n2 0\n1 2\n2 3\n";
        let err = load_alist(text).unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 6,
                    column: 1,
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn index_out_of_range() {
        let text = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 3\n2 0\n1 2\n2 3\n";
        let err = load_alist(text).unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 6,
                    column: 3,
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn inconsistent_orientations() {
        let text = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 3\n2 3\n";
        let err = load_alist(text).unwrap_err();
        assert!(err.to_string().contains("inconsistent"), "{err}");
    }

    #[test]
    fn bad_degree_header() {
        let text = "3 2\n3 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n";
        assert!(load_alist(text).is_err());
        assert!(load_alist("3 2\n2 2\n1 2\n").is_err());
        assert!(load_alist("3 x\n").is_err());
    }

    mod props {
        use super::*;
        use crate::codes::{load_plain, save_plain};
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn round_trips(rows in proptest::collection::vec(proptest::collection::vec(0u8..2, 1..40), 1..12)) {
                let n = rows[0].len();
                let rows: Vec<Vec<u8>> = rows.into_iter().map(|mut r| { r.resize(n, 0); r }).collect();
                let m = BitMatrix::from_bit_rows(&rows);
                let text = save_alist(&m);
                prop_assert_eq!(&load_alist(&text).unwrap(), &m);
                prop_assert_eq!(save_alist(&load_alist(&text).unwrap()), text);
                prop_assert_eq!(&load_plain(&save_plain(&m)).unwrap(), &m);
            }
        }
    }
}
