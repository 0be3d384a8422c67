//! Divisibility scans with certified integer quotients.

use tandet::harness::{scan_conjecture, ConjectureId, HarnessOptions};

fn main() -> tandet::Result<()> {
    let opts = HarnessOptions::default();
    for id in [ConjectureId::C5_1, ConjectureId::C5_3, ConjectureId::C5_4] {
        let (lo, hi) = id.default_range();
        println!("conjecture {id}:");
        for row in scan_conjecture(id, lo, hi, &opts)? {
            let q = row
                .quotient
                .map(|q| q.to_string())
                .or(row.quotient_exact)
                .unwrap_or_else(|| "?".into());
            println!(
                "  {:<38} quotient {q:<14} {:?}",
                row.record.subject_label(),
                row.divisibility
            );
        }
    }
    Ok(())
}
