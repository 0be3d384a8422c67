//! The integers a_p^+ and a_p^- from the Legendre-weighted tan determinants.

use tandet::harness::{compute_a_pm, HarnessOptions};

fn main() -> tandet::Result<()> {
    let opts = HarnessOptions::default();
    println!("{:>3} {:>14} {:>14}", "p", "a_p^+", "a_p^-");
    for p in [3, 7, 11, 19, 23] {
        let (plus, minus) = compute_a_pm(p, &opts)?;
        println!("{p:>3} {plus:>14} {minus:>14}");
    }
    Ok(())
}
