//! Recovering a rational from a ball, confirmed by a second evaluation at
//! twice the precision.

use num_bigint::BigInt;
use tandet::detcore::{build, det_ball, MatrixSpec};
use tandet::recognize::{recognize_integer, recognize_rational_refined};

fn main() -> tandet::Result<()> {
    let m = build(&MatrixSpec::CotJk { p: 13 })?;
    let eval = |prec: u32| det_ball(&m, prec).map(|d| d.value);
    let q = recognize_rational_refined(&eval, 128, &BigInt::from(1000))?;
    println!("det cot(pi jk/13) = {q:?}");

    let m = build(&MatrixSpec::TanLin {
        n: 7,
        a: 1,
        b: 2,
        delta: 1,
    })?;
    println!(
        "det tan(pi (j+2k)/7) = {:?}",
        recognize_integer(&det_ball(&m, 128)?.value)
    );
    Ok(())
}
