//! Spot-checks the rank-deficiency inequality over a grid of parameters.

use num_bigint::BigInt;
use stopred::bounds::{lemma1_holds, rank_condition, rational};

fn main() -> stopred::Result<()> {
    let (mut points, mut holds) = (0u32, 0u32);
    for r in 3u32..=16 {
        for d in (1..=r + 2).filter(|&d| rank_condition(r as usize, d as usize)) {
            for b2 in 2..=2 * (r as i64 - 2) {
                for x in [-(1i64 << r), 0, (1 << r) / 2, (1 << r) - 1] {
                    points += 1;
                    if lemma1_holds(r, d, &rational(b2, 2), &BigInt::from(x))? {
                        holds += 1;
                    }
                }
            }
        }
    }
    println!("{holds} of {points} grid points satisfy the inequality");
    Ok(())
}
