//! Random rows followed by derandomized completion, for several seeds.
//!
//! Usage: cargo run --release --example randomized_construct -- [l] [t]

use stopred::construct::randomized_extend;
use stopred::{codes, Budget};

fn main() -> stopred::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("integer argument"));
    let l = args.next().unwrap_or(8);
    let t = args.next().unwrap_or(24);
    let code = codes::golay24();
    let budget = Budget::from_env()?;
    for seed in 1..=5 {
        let (m, report) = randomized_extend(&code, l, t, seed, &budget)?;
        println!(
            "seed {seed}: delta after {t} random rows = {}, final rows = {}, stopping distance {}, verified {}",
            report.delta_after_step1.unwrap_or(0),
            m.n_rows(),
            report.stopping_distance,
            report.passed()
        );
    }
    Ok(())
}
