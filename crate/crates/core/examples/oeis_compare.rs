//! Compares computed s_n with the shipped b-file fixture, fully offline.

use tandet::cli::oeis::A277445_FIXTURE;
use tandet::harness::{compare_oeis, parse_bfile, sequence_s, HarnessOptions};

fn main() -> tandet::Result<()> {
    let bfile = parse_bfile(A277445_FIXTURE)?;
    let seq = sequence_s(11, &HarnessOptions::default())?;
    let cmp = compare_oeis(&seq, &bfile)?;
    for row in &cmp.rows {
        println!(
            "n={:<2} s={:<8} t={:<8} sign {:+} match {}",
            row.n, row.s, row.t, row.expected_sign, row.matches
        );
    }
    println!("all match: {}", cmp.all_match());
    Ok(())
}
