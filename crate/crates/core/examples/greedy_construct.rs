//! Greedy construction of a Golay parity-check matrix with stopping
//! distance 8, using both strategies.

use std::time::Instant;

use stopred::construct::{greedy_extend, Strategy};
use stopred::{codes, Budget};

fn main() -> stopred::Result<()> {
    let code = codes::golay24();
    let budget = Budget::from_env()?;
    for strategy in [Strategy::MaxCoverage, Strategy::Lexicographic] {
        let start = Instant::now();
        let (_, report) = greedy_extend(&code, 8, strategy, 0, &budget)?;
        println!("{report}\n({:.2?})\n", start.elapsed());
    }
    Ok(())
}
