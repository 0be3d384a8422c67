//! Exact determinants in a cyclotomic field, projected onto Q(√p) when possible.

use tandet::detcore::{build, det_exact, MatrixSpec};
use tandet::harness::exact_repr;

fn main() -> tandet::Result<()> {
    let specs = [
        MatrixSpec::TanQuad {
            p: 7,
            a: 1,
            b: 1,
            delta: 0,
        },
        MatrixSpec::TanQuad {
            p: 5,
            a: 1,
            b: 2,
            delta: 1,
        },
        MatrixSpec::CotJk { p: 11 },
        MatrixSpec::CosJk {
            n: 5,
            delta: 0,
            doubled: false,
        },
    ];
    for spec in specs {
        let x = det_exact(&build(&spec)?)?;
        println!("{spec:<40} = {}", exact_repr(&x, Some(spec.modulus())));
    }
    Ok(())
}
