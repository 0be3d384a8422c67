use super::matrix::{ResidueMatrix, TrigFunc};
use crate::error::{param, Result};
use crate::realball::{Dyadic, RealBall, TrigTable};

/// A determinant enclosure. `pivot_failure` is set when elimination met a
/// submatrix whose every candidate pivot contained zero; the enclosure is
/// then completed with a Hadamard bound and always contains zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetBall {
    pub value: RealBall,
    pub pivot_failure: bool,
    pub prec: u32,
}

/// Guard bits used when evaluating entries.
const ENTRY_GUARD: u32 = 16;

/// Evaluates every entry of the matrix as a ball.
pub fn evaluate_entries(m: &ResidueMatrix, prec: u32) -> Result<Vec<Vec<RealBall>>> {
    let table = TrigTable::get(m.den, prec + ENTRY_GUARD);
    let mut rows = Vec::with_capacity(m.dim);
    for j in 0..m.dim {
        let mut row = Vec::with_capacity(m.dim);
        for k in 0..m.dim {
            let w = m.weight(j, k);
            if w == 0 {
                row.push(RealBall::zero(prec));
                continue;
            }
            let r = m.residue(j, k);
            let v = match m.func {
                TrigFunc::Tan => table.tan(r)?.clone(),
                TrigFunc::Cot => table.cot(r)?.clone(),
                TrigFunc::Sin => table.sin(r).clone(),
                TrigFunc::Cos => table.cos(r).clone(),
            };
            let v = if m.squared { v.sqr() } else { v };
            row.push(if w < 0 { v.neg() } else { v });
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Certified determinant of a residue matrix at working precision `prec`.
pub fn det_ball(m: &ResidueMatrix, prec: u32) -> Result<DetBall> {
    if prec < 32 {
        return param(format!("precision must be at least 32 bits, got {prec}"));
    }
    let a = evaluate_entries(m, prec)?;
    Ok(det_ball_matrix(a, prec))
}

/// Gaussian elimination with full pivoting on the entry whose enclosure is
/// farthest from zero.
pub fn det_ball_matrix(mut a: Vec<Vec<RealBall>>, prec: u32) -> DetBall {
    let n = a.len();
    let mut det = RealBall::one(prec);
    for step in 0..n {
        let mut best: Option<(usize, usize, Dyadic)> = None;
        for (i, row) in a.iter().enumerate().skip(step) {
            for (j, x) in row.iter().enumerate().skip(step) {
                let g = x.mig();
                if g.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, _, b)| g > *b) {
                    best = Some((i, j, g));
                }
            }
        }
        let Some((pi, pj, _)) = best else {
            let all_exact_zero = a[step..]
                .iter()
                .all(|row| row[step..].iter().all(|x| x.is_exact() && x.mid().is_zero()));
            if all_exact_zero {
                return DetBall {
                    value: RealBall::zero(prec),
                    pivot_failure: false,
                    prec,
                };
            }
            let h = hadamard_bound(&a, step);
            return DetBall {
                value: RealBall::new(Dyadic::zero(), det.mag().mul(&h), prec),
                pivot_failure: true,
                prec,
            };
        };
        if pi != step {
            a.swap(pi, step);
            det = det.neg();
        }
        if pj != step {
            for row in a.iter_mut() {
                row.swap(pj, step);
            }
            det = det.neg();
        }
        let pivot = a[step][step].clone();
        det = det.mul(&pivot);
        let (top, bottom) = a.split_at_mut(step + 1);
        let prow = &top[step];
        for row in bottom.iter_mut() {
            if row[step].is_exact() && row[step].mid().is_zero() {
                continue;
            }
            let f = row[step].div(&pivot).expect("pivot excludes zero");
            for c in step + 1..n {
                if prow[c].is_exact() && prow[c].mid().is_zero() {
                    continue;
                }
                row[c] = row[c].sub(&f.mul(&prow[c]));
            }
        }
    }
    DetBall {
        value: det,
        pivot_failure: false,
        prec,
    }
}

/// `Π_i Σ_j |a_ij|` over the trailing block, an upper bound for its determinant.
fn hadamard_bound(a: &[Vec<RealBall>], step: usize) -> Dyadic {
    a[step..].iter().fold(Dyadic::one(), |acc, row| {
        let s = row[step..].iter().fold(Dyadic::zero(), |s, x| s.add(&x.mag()));
        acc.mul(&s).round_up_mag(64)
    })
}

#[cfg(test)]
mod tests {
    use super::super::matrix::{build, MatrixSpec};
    use super::*;
    use crate::realball::sqrt_u64;

    #[test]
    fn ball_examples() {
        let d = det_ball(&build(&MatrixSpec::CotJk { p: 5 }).unwrap(), 128).unwrap();
        assert!(d.value.contains(&Dyadic::from_i64(-2)));
        assert!(d.value.rel_accuracy_bits() > 100);
        let d = det_ball(&build(&MatrixSpec::CotJk { p: 7 }).unwrap(), 128).unwrap();
        assert!(d.value.overlaps(&sqrt_u64(7, 128).mul_int(-4)));
        assert!(d.value.mid_decimal().starts_with("-1.05830052"));
        let d = det_ball(
            &build(&MatrixSpec::TanLin {
                n: 3,
                a: 1,
                b: 1,
                delta: 1,
            })
            .unwrap(),
            128,
        )
        .unwrap();
        // indices 1..=2 give diag(tan(2π/3), tan(4π/3)) plus zeros tan(π)
        assert!(d.value.contains(&Dyadic::from_i64(-3)));
        let single = det_ball_matrix(vec![vec![sqrt_u64(3, 128).neg()]], 128);
        assert!(single.value.overlaps(&sqrt_u64(3, 128).neg()));
    }

    #[test]
    fn singular_matrix_reports_failure_with_zero_enclosure() {
        let one = RealBall::one(64);
        let d = det_ball_matrix(vec![vec![one.clone(), one.clone()], vec![one.clone(), one]], 64);
        assert!(d.value.contains_zero());
        let third = RealBall::one(64).div_int(3);
        let d = det_ball_matrix(vec![vec![third.clone(), third.clone()], vec![third.clone(), third]], 64);
        assert!(d.pivot_failure && d.value.contains_zero());
    }

    #[test]
    fn empty_and_zero_matrices() {
        assert_eq!(det_ball_matrix(vec![], 64).value, RealBall::one(64));
        let z = RealBall::zero(64);
        let d = det_ball_matrix(vec![vec![z.clone(), z.clone()], vec![z.clone(), z]], 64);
        assert_eq!(d.value, RealBall::zero(64));
        assert!(!d.pivot_failure);
    }
}
