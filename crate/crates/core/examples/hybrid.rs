//! Hybrid bounds: exact uncovered-set counts for the first tau rows of the
//! conventional Golay parity-check matrix.
//!
//! Usage: cargo run --example hybrid -- [tau] [l]

use stopred::bounds::bound_hybrid;
use stopred::cover::uncovered_counts;
use stopred::{codes, Budget};

fn main() -> stopred::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("integer argument"));
    let tau = args.next().unwrap_or(5);
    let l = args.next().unwrap_or(6);
    let code = codes::golay24();
    let budget = Budget::from_env()?;
    let u = uncovered_counts(&code.h().take_rows(tau), 3, l - 1, &budget)?;
    for (i, ui) in u.iter() {
        println!("u_{i} = {ui}");
    }
    let res = bound_hybrid(&code, tau, l, &budget)?;
    println!(
        "rho_{l} <= {} ({}, t* = {}, kappa = {})",
        res.total, res.variant, res.t_star, res.kappa
    );
    Ok(())
}
