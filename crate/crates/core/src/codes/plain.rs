//! One matrix row per line, written as `0`/`1` characters.
//!
//! Spaces and tabs between digits are accepted on input and never written.
//! Blank lines are skipped.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

pub fn load_plain(text: &str) -> Result<BitMatrix> {
    let mut rows = Vec::new();
    let mut width: Option<(usize, usize)> = None;
    for (ln, line) in text.lines().enumerate() {
        let mut bits = Vec::new();
        for (col, ch) in line.chars().enumerate() {
            match ch {
                '0' => bits.push(0u8),
                '1' => bits.push(1u8),
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::parse(
                        ln + 1,
                        col + 1,
                        format!("unexpected character {c:?}, expected 0 or 1"),
                    ))
                }
            }
        }
        if bits.is_empty() {
            continue;
        }
        match width {
            None => width = Some((bits.len(), ln + 1)),
            Some((w, first)) if w != bits.len() => {
                return Err(Error::parse(
                    ln + 1,
                    1,
                    format!(
                        "ragged rows: {} entries here, {w} on line {first}",
                        bits.len()
                    ),
                ))
            }
            Some(_) => {}
        }
        rows.push(BitVector::from_bits(&bits));
    }
    let Some((n, _)) = width else {
        return Err(Error::parse(1, 1, "zero dimensions: no matrix rows"));
    };
    BitMatrix::from_rows(n, rows)
}

pub fn save_plain(m: &BitMatrix) -> String {
    let mut out = String::with_capacity(m.n_rows() * (m.n_cols() + 1));
    for r in m.rows() {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_matrix() {
        let m = load_plain("11\n01").unwrap();
        assert_eq!(m, BitMatrix::from_bit_rows(&[[1u8, 1], [0, 1]]));
        assert_eq!(save_plain(&m), "11\n01\n");
    }

    #[test]
    fn spaced_table_transcription() {
        let text = "1 1 0 0 0 0 0 0 0 0 0 0 0 1 1 0 1 1 1 0 0 0 1 0\n\
                    1 0 1 0 0 0 0 0 0 0 0 0 0 0 1 1 0 1 1 1 0 0 0 1\n";
        let m = load_plain(text).unwrap();
        assert_eq!(m.n_cols(), 24);
        assert_eq!(m.row(0).to_string(), crate::codes::GOLAY24_H[0]);
        let spaced: String = crate::codes::GOLAY24_H
            .iter()
            .map(|r| r.chars().map(|c| format!("{c} ")).collect::<String>() + "\n")
            .collect();
        assert_eq!(load_plain(&spaced).unwrap().rank(), 12);
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = load_plain("10\n1").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn foreign_characters_rejected() {
        let err = load_plain("10\n1x").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 2,
                    column: 2,
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn empty_rejected() {
        assert!(load_plain("\n  \n").is_err());
    }
}
