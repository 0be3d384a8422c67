//! Proofs that a determinant vanishes: a structural certificate when the
//! index maps give one, exact evaluation otherwise.

use tandet::detcore::{build, det_exact, MatrixSpec};
use tandet::recognize::structural_zero;

fn main() -> tandet::Result<()> {
    let specs = [
        MatrixSpec::TanLin {
            n: 9,
            a: 2,
            b: 1,
            delta: 0,
        },
        MatrixSpec::TanQuad {
            p: 13,
            a: 1,
            b: 2,
            delta: 0,
        },
        MatrixSpec::TanQuad {
            p: 7,
            a: 1,
            b: 2,
            delta: 1,
        },
        MatrixSpec::TanJk { m: 10 },
    ];
    for spec in specs {
        let m = build(&spec)?;
        match structural_zero(&m) {
            Some(cert) => println!("{spec}: zero by {:?}, re-check {}", cert.kind, cert.verify(&m)),
            None => println!("{spec}: no structural certificate, exact value {}", det_exact(&m)?),
        }
    }
    Ok(())
}
