//! The benchmark comparison tables for the Golay and QR codes, rendered as
//! CSV or markdown. Output is byte-deterministic.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bounds::{analytic_thm2, baseline_bound, bound_hybrid, bound_thm3};
use crate::budget::Budget;
use crate::codes::{golay24, LinearCode};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    /// Stopping-redundancy bounds for both codes.
    Two,
    /// Hierarchy bounds for the Golay code.
    Three,
    /// Hierarchy bounds for the QR code.
    Four,
    /// Hybrid hierarchy bounds for the Golay code.
    Five,
}

impl FromStr for Which {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim_start_matches("table") {
            "2" => Ok(Which::Two),
            "3" => Ok(Which::Three),
            "4" => Ok(Which::Four),
            "5" => Ok(Which::Five),
            _ => Err(Error::precondition(format!(
                "unknown table {s:?} (expected 2, 3, 4 or 5)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::precondition(format!(
                "unknown format {s:?} (expected csv or markdown)"
            ))),
        }
    }
}

/// Parameters `(n, r, d, d⊥)` of the two benchmark codes.
pub const GOLAY: (usize, usize, usize, usize) = (24, 12, 8, 8);
pub const QR: (usize, usize, usize, usize) = (48, 24, 12, 12);

/// One row of the stopping-redundancy comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MethodRow {
    pub method: &'static str,
    pub golay24: usize,
    pub qr48: usize,
}

/// Rows `baseline`, `tau0`, `cor1`, `cor2`.
pub fn table2() -> Result<Vec<MethodRow>> {
    let both = |f: &(dyn Fn((usize, usize, usize, usize)) -> Result<usize> + Sync)| -> Result<(usize, usize)> {
        let (a, b) = rayon::join(|| f(GOLAY), || f(QR));
        Ok((a?, b?))
    };
    let mut rows = Vec::new();
    let (g, q) = both(&|(_, r, d, _)| Ok(baseline_bound(r, d)?.total))?;
    rows.push(MethodRow {
        method: "baseline",
        golay24: g,
        qr48: q,
    });
    for (tau, name) in [(0, "tau0"), (1, "cor1"), (2, "cor2")] {
        let (g, q) = both(&|(n, r, d, dd)| Ok(analytic_thm2(n, r, d, dd, tau)?.total))?;
        rows.push(MethodRow {
            method: name,
            golay24: g,
            qr48: q,
        });
    }
    Ok(rows)
}

/// `(l, hierarchy bound, baseline)` for `l = 4..=d`.
pub fn hierarchy_table(code: (usize, usize, usize, usize)) -> Result<Vec<(usize, usize, usize)>> {
    let (n, r, d, dd) = code;
    (4..=d)
        .into_par_iter()
        .map(|l| {
            Ok((
                l,
                bound_thm3(n, r, dd, l, 2, None)?.total,
                baseline_bound(r, l)?.total,
            ))
        })
        .collect()
}

pub fn table3() -> Result<Vec<(usize, usize, usize)>> {
    hierarchy_table(GOLAY)
}

pub fn table4() -> Result<Vec<(usize, usize, usize)>> {
    hierarchy_table(QR)
}

/// Hybrid bounds for `τ = 1..=r` (rows) and `l = 4..=d` (columns).
pub fn hybrid_grid(code: &LinearCode, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let d = code
        .d()
        .ok_or_else(|| Error::precondition("hybrid table needs a known d"))?;
    (1..=code.r())
        .into_par_iter()
        .map(|tau| {
            (4..=d)
                .map(|l| Ok(bound_hybrid(code, tau, l, budget)?.total))
                .collect()
        })
        .collect()
}

pub fn table5(budget: &Budget) -> Result<Vec<Vec<usize>>> {
    hybrid_grid(&golay24(), budget)
}

fn markdown(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    for r in rows {
        let _ = writeln!(out, "| {} |", r.join(" | "));
    }
    out
}

fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.join(","));
        out.push('\n');
    }
    out
}

/// Renders one table.
pub fn render(which: Which, format: Format, budget: &Budget) -> Result<String> {
    let emit = |h: &[&str], rows: &[Vec<String>]| match format {
        Format::Csv => csv(h, rows),
        Format::Markdown => markdown(h, rows),
    };
    Ok(match which {
        Which::Two => {
            let rows: Vec<Vec<String>> = table2()?
                .into_iter()
                .map(|m| {
                    vec![
                        m.method.to_string(),
                        m.golay24.to_string(),
                        m.qr48.to_string(),
                    ]
                })
                .collect();
            emit(&["method", "golay24", "qr48"], &rows)
        }
        Which::Three | Which::Four => {
            let t = if which == Which::Three {
                table3()?
            } else {
                table4()?
            };
            match format {
                Format::Csv => {
                    let rows: Vec<Vec<String>> = t
                        .iter()
                        .map(|&(l, v, _)| vec![l.to_string(), v.to_string()])
                        .collect();
                    csv(&["l", "value"], &rows)
                }
                Format::Markdown => {
                    let rows: Vec<Vec<String>> = t
                        .iter()
                        .map(|&(l, v, b)| vec![l.to_string(), b.to_string(), v.to_string()])
                        .collect();
                    markdown(&["l", "baseline", "value"], &rows)
                }
            }
        }
        Which::Five => {
            let grid = table5(budget)?;
            let rows: Vec<Vec<String>> = grid
                .iter()
                .enumerate()
                .map(|(k, row)| {
                    std::iter::once((k + 1).to_string())
                        .chain(row.iter().map(|v| v.to_string()))
                        .collect()
                })
                .collect();
            emit(&["tau", "l4", "l5", "l6", "l7", "l8"], &rows)
        }
    })
}
