//! Certified enclosures of one determinant at increasing precision.

use tandet::detcore::{build, det_ball, MatrixSpec};

fn main() -> tandet::Result<()> {
    let m = build(&MatrixSpec::CotJk { p: 7 })?;
    for prec in [32, 64, 128, 256] {
        let d = det_ball(&m, prec)?;
        println!(
            "prec {prec:>3}: {}  ({} correct bits)",
            d.value,
            d.value.rel_accuracy_bits()
        );
    }
    Ok(())
}
