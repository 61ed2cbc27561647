//! Writes the QR parity-check matrix as alist and plain text, then reads
//! both back.

use stopred::codes::{extended_qr48, load_alist, load_plain, save_alist, save_plain};

fn main() -> stopred::Result<()> {
    let h = extended_qr48()?.h().clone();
    let alist = save_alist(&h);
    let plain = save_plain(&h);
    print!(
        "{}",
        alist
            .lines()
            .take(4)
            .map(|l| format!("{l}\n"))
            .collect::<String>()
    );
    println!("...");
    assert_eq!(load_alist(&alist)?, h);
    assert_eq!(load_plain(&plain)?, h);
    println!(
        "alist: {} bytes, plain: {} bytes, both round-trip",
        alist.len(),
        plain.len()
    );
    Ok(())
}
