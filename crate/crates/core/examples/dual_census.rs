//! Minimum-weight census and weight distribution of the dual codes.

use stopred::codes::{extended_qr48, golay24};
use stopred::gf2::weight_distribution;

fn main() -> stopred::Result<()> {
    for code in [golay24(), extended_qr48()?] {
        let c = code.dual_census()?;
        println!(
            "{}: [{}, {}], dual distance {} with {} words, self-dual: {}",
            code.name(),
            code.n(),
            code.k(),
            c.min_weight,
            c.count,
            code.is_self_dual()
        );
        let dist = weight_distribution(code.h())?;
        let nonzero: Vec<String> = dist
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(w, a)| format!("A_{w} = {a}"))
            .collect();
        println!("  {}", nonzero.join(", "));
    }
    Ok(())
}
