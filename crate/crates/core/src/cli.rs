//! The `stopred` command line. Each subcommand parses its arguments, calls
//! one library entry point and prints the result; diagnostics go to the
//! error stream.
//!
//! Exit codes: 0 success, 1 domain error (violated precondition, budget,
//! failed verification), 2 I/O or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bounds::{analytic_thm2, bound_hybrid, bound_thm3, BoundResult};
use crate::budget::Budget;
use crate::codes::{load_matrix_file, resolve_code, save_alist, save_plain, LinearCode};
use crate::construct::{greedy_extend, randomized_extend, Strategy};
use crate::cover::{find_stopping_set, stopping_distance};
use crate::error::{Error, Result};
use crate::tables::{render, Format, Which};

#[derive(Parser, Debug)]
#[command(
    name = "stopred",
    version,
    about = "Stopping redundancy bounds and redundant parity-check matrix construction"
)]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Method {
    /// No fixed rows.
    Tau0,
    /// One fixed minimum-weight dual row.
    Cor1,
    /// Two fixed minimum-weight dual rows.
    Cor2,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum BuildStrategy {
    Lexicographic,
    MaxCoverage,
    Randomized,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum TableFormat {
    Csv,
    Markdown,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print n, k, d, r, dual distance and the number of minimum-weight dual words.
    Info {
        /// Built-in code name (golay24, qr48) or matrix file.
        code: String,
    },
    /// Stopping-redundancy bound from 0, 1 or 2 fixed minimum-weight dual rows.
    Bound {
        #[arg(long)]
        code: String,
        #[arg(long, value_enum)]
        method: Method,
        /// Also print t*, kappa and the t-scan trace to stderr.
        #[arg(long)]
        explain: bool,
    },
    /// Hierarchy bound rho_l for one level or a range such as 4..8.
    Hierarchy {
        #[arg(long)]
        code: String,
        #[arg(long)]
        l: String,
        /// Number of fixed minimum-weight rows (0, 1 or 2).
        #[arg(long, default_value_t = 2)]
        tau: usize,
    },
    /// Hierarchy bound with exact counts for the first tau parity-check rows.
    Hybrid {
        #[arg(long)]
        code: String,
        #[arg(long)]
        tau: usize,
        #[arg(long)]
        l: usize,
    },
    /// Stopping distance of a parity-check matrix file.
    Stopdist {
        #[arg(long)]
        matrix: PathBuf,
        /// Largest stopping-set size to search (default: number of columns).
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Build a parity-check matrix with stopping distance at least l.
    Construct {
        #[arg(long)]
        code: String,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, default_value = "max-coverage")]
        strategy: BuildStrategy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random rows drawn before derandomizing (randomized strategy; default r).
        #[arg(long)]
        t: Option<usize>,
        /// Output file; `.alist` selects alist, anything else the plain format.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce a benchmark table.
    Tables {
        #[arg(long)]
        which: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
}

fn analyzed(spec: &str) -> Result<LinearCode> {
    let mut code = resolve_code(spec)?;
    code.analyze()?;
    Ok(code)
}

fn parse_levels(s: &str) -> Result<Vec<usize>> {
    let bad = || {
        Error::parse(
            1,
            1,
            format!("bad level {s:?}: expected an integer or a range like 4..8"),
        )
    };
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    if let Some((a, b)) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .or_else(|| s.split_once('-'))
    {
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(bad());
        }
        Ok((a..=b).collect())
    } else {
        Ok(vec![num(s)?])
    }
}

fn explain(err: &mut (dyn Write + Send), res: &BoundResult) -> Result<()> {
    writeln!(
        err,
        "variant {}: tau {} + t* {} + kappa {} + completion {} = {}",
        res.variant, res.tau, res.t_star, res.kappa, res.completion, res.total
    )?;
    Ok(())
}

fn write_matrix(path: &Path, m: &crate::gf2::BitMatrix) -> Result<()> {
    let text = if path.extension().is_some_and(|e| e == "alist") {
        save_alist(m)
    } else {
        save_plain(m)
    };
    std::fs::write(path, text)?;
    Ok(())
}

fn execute(cli: Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<()> {
    let budget = Budget::from_env()?;
    match cli.command {
        Command::Info { code } => {
            let code = analyzed(&code)?;
            let census = code.dual_census()?;
            writeln!(out, "name: {}", code.name())?;
            writeln!(out, "n: {}", code.n())?;
            writeln!(out, "k: {}", code.k())?;
            writeln!(out, "d: {}", code.d().unwrap_or(0))?;
            writeln!(out, "r: {}", code.r())?;
            writeln!(out, "dual distance: {}", census.min_weight)?;
            writeln!(out, "min-weight dual words: {}", census.count)?;
        }
        Command::Bound {
            code,
            method,
            explain: ex,
        } => {
            let code = analyzed(&code)?;
            let tau = match method {
                Method::Tau0 => 0,
                Method::Cor1 => 1,
                Method::Cor2 => 2,
            };
            let d = code.d().unwrap_or(0);
            let dd = code.dual_distance().unwrap_or(0);
            let res = analytic_thm2(code.n(), code.r(), d, dd, tau)?;
            writeln!(out, "{}", res.total)?;
            if ex {
                explain(err, &res)?;
                for p in &res.trace {
                    writeln!(err, "t {} floor(D_t) {} kappa {}", p.t, p.d_floor, p.kappa)?;
                }
            }
        }
        Command::Hierarchy { code, l, tau } => {
            let levels = parse_levels(&l)?;
            let code = analyzed(&code)?;
            let dd = code.dual_distance().unwrap_or(0);
            let single = levels.len() == 1;
            if !single {
                writeln!(out, "l,value")?;
            }
            for l in levels {
                let res = bound_thm3(code.n(), code.r(), dd, l, tau, None)?;
                for note in &res.notes {
                    writeln!(err, "l = {l}: {note}")?;
                }
                if single {
                    writeln!(out, "{}", res.total)?;
                } else {
                    writeln!(out, "{l},{}", res.total)?;
                }
            }
        }
        Command::Hybrid { code, tau, l } => {
            let code = analyzed(&code)?;
            let res = bound_hybrid(&code, tau, l, &budget)?;
            for note in &res.notes {
                writeln!(err, "{note}")?;
            }
            writeln!(out, "{}", res.total)?;
        }
        Command::Stopdist { matrix, limit } => {
            let m = load_matrix_file(&matrix)?;
            let limit = limit.unwrap_or(m.n_cols());
            let sd = stopping_distance(&m, limit, &budget)?;
            writeln!(out, "{sd}")?;
            if let Some(s) = find_stopping_set(&m, sd.value.min(limit), &budget)? {
                writeln!(err, "smallest stopping set: {:?}", s.indices())?;
            }
        }
        Command::Construct {
            code,
            l,
            strategy,
            seed,
            t,
            out: path,
        } => {
            let code = analyzed(&code)?;
            let (m, report) = match strategy {
                BuildStrategy::Lexicographic => {
                    greedy_extend(&code, l, Strategy::Lexicographic, seed, &budget)?
                }
                BuildStrategy::MaxCoverage => {
                    greedy_extend(&code, l, Strategy::MaxCoverage, seed, &budget)?
                }
                BuildStrategy::Randomized => {
                    randomized_extend(&code, l, t.unwrap_or(code.r()), seed, &budget)?
                }
            };
            if let Some(path) = path {
                write_matrix(&path, &m)?;
            } else {
                write!(out, "{}", save_plain(&m))?;
            }
            writeln!(err, "{report}")?;
            if !report.passed() {
                return Err(Error::Consistency(
                    "constructed matrix failed verification".into(),
                ));
            }
        }
        Command::Tables { which, format } => {
            let which: Which = which.parse()?;
            let format = match format {
                TableFormat::Csv => Format::Csv,
                TableFormat::Markdown => Format::Markdown,
            };
            write!(out, "{}", render(which, format, &budget)?)?;
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n);
    }
    let result = match pool.build() {
        Ok(pool) => pool.install(|| execute(cli, out, err)),
        Err(e) => Err(Error::precondition(format!(
            "cannot start thread pool: {e}"
        ))),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(
            std::iter::once("stopred").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn levels() {
        assert_eq!(parse_levels("6").unwrap(), [6]);
        assert_eq!(parse_levels("4..6").unwrap(), [4, 5, 6]);
        assert_eq!(parse_levels("4-5").unwrap(), [4, 5]);
        assert!(parse_levels("x").is_err());
        assert!(parse_levels("6..4").is_err());
    }

    #[test]
    fn bound_cor2() {
        let (code, out, _) = call(&["bound", "--code", "golay24", "--method", "cor2"]);
        assert_eq!((code, out.as_str()), (0, "177\n"));
    }

    #[test]
    fn hierarchy_note_on_stderr() {
        let (code, out, err) = call(&["hierarchy", "--code", "golay24", "--l", "4"]);
        assert_eq!((code, out.as_str()), (0, "25\n"));
        assert!(err.contains("conditional variant unavailable"), "{err}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["info", "no-such-file.alist"]).0, 2);
        assert_eq!(
            call(&["hybrid", "--code", "golay24", "--tau", "0", "--l", "6"]).0,
            1
        );
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }
}
