//! The prime 3 lies outside several hypotheses; these records show what
//! actually happens there.

use tandet::harness::{anomaly_report, HarnessOptions};

fn main() -> tandet::Result<()> {
    for r in anomaly_report(&HarnessOptions::default())? {
        println!(
            "{:<34} exact {:<8} {} {}",
            r.subject_label(),
            r.exact.unwrap_or_default(),
            r.verdict,
            r.note.unwrap_or_default()
        );
    }
    Ok(())
}
