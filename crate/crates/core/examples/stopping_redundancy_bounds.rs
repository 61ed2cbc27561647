//! Stopping-redundancy bounds for both benchmark codes with 0, 1 and 2
//! fixed minimum-weight rows, showing where each t-scan bottoms out.

use stopred::bounds::{analytic_thm2, baseline_bound};

fn main() -> stopred::Result<()> {
    for (name, n, r, d, dd) in [("golay24", 24, 12, 8, 8), ("qr48", 48, 24, 12, 12)] {
        println!("{name}: baseline {}", baseline_bound(r, d)?.total);
        for tau in 0..=2 {
            let res = analytic_thm2(n, r, d, dd, tau)?;
            println!(
                "  tau = {tau}: {} = {tau} + t* {} + kappa {} (scanned {} values of t)",
                res.total,
                res.t_star,
                res.kappa,
                res.trace.len()
            );
        }
    }
    Ok(())
}
