//! Hierarchy bounds rho_l for the QR code, with the variant that won.

use stopred::bounds::{baseline_bound, bound_thm3};

fn main() -> stopred::Result<()> {
    println!("{:>3} {:>9} {:>6}  variant", "l", "baseline", "bound");
    for l in 4..=12 {
        let res = bound_thm3(48, 24, 12, l, 2, None)?;
        println!(
            "{l:>3} {:>9} {:>6}  {}",
            baseline_bound(24, l)?.total,
            res.total,
            res.variant
        );
    }
    Ok(())
}
