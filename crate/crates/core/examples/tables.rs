//! Prints every benchmark table as markdown.

use std::time::Instant;

use stopred::tables::{render, Format, Which};
use stopred::Budget;

fn main() -> stopred::Result<()> {
    let budget = Budget::from_env()?;
    for (name, which) in [
        ("II", Which::Two),
        ("III", Which::Three),
        ("IV", Which::Four),
        ("V", Which::Five),
    ] {
        let start = Instant::now();
        let text = render(which, Format::Markdown, &budget)?;
        println!("Table {name} ({:.2?})\n\n{text}", start.elapsed());
    }
    Ok(())
}
