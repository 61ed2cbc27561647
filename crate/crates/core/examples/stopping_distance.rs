//! Stopping distance of a parity-check matrix file, or of the conventional
//! Golay matrix when no file is given.
//!
//! Usage: cargo run --example stopping_distance -- [matrix-file] [limit]

use std::path::Path;

use stopred::codes::{golay24, load_matrix_file};
use stopred::cover::{find_stopping_set, stopping_distance};
use stopred::Budget;

fn main() -> stopred::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let m = match args.first() {
        Some(p) => load_matrix_file(Path::new(p))?,
        None => golay24().h().clone(),
    };
    let limit = args.get(1).map_or(8, |s| s.parse().expect("integer limit"));
    let budget = Budget::from_env()?;
    let sd = stopping_distance(&m, limit, &budget)?;
    println!(
        "{} x {} matrix, stopping distance {sd}",
        m.n_rows(),
        m.n_cols()
    );
    if let Some(set) = find_stopping_set(&m, limit, &budget)? {
        println!(
            "smallest stopping set (1-based columns): {:?}",
            set.indices()
        );
    }
    Ok(())
}
