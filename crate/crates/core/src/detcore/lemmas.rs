//! Border identity, Cauchy determinants and fraction-free elimination.

use super::cyclo::CycloElement;
use super::det_ball::det_ball_matrix;
use crate::error::{Error, Result};
use crate::realball::RealBall;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Scalars the lemma utilities accept: exact rationals, cyclotomic
/// elements and balls.
pub trait Scalar: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn det(rows: Vec<Vec<Self>>) -> Result<Self>;
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::Domain("division by an exact zero".into()));
        }
        Ok(self / o)
    }
    fn det(rows: Vec<Vec<Self>>) -> Result<Self> {
        Ok(det_rational(&rows))
    }
}

impl Scalar for CycloElement {
    fn zero_like(&self) -> Self {
        CycloElement::zero(self.field().clone())
    }
    fn one_like(&self) -> Self {
        CycloElement::from_int(self.field().clone(), 1)
    }
    fn add(&self, o: &Self) -> Self {
        CycloElement::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CycloElement::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CycloElement::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        CycloElement::div(self, o).ok_or_else(|| Error::Domain("division by an exact zero".into()))
    }
    fn det(mut a: Vec<Vec<Self>>) -> Result<Self> {
        let n = a.len();
        let Some(first) = a.first().and_then(|r| r.first()) else {
            return Err(Error::Param(
                "cyclotomic determinant of an empty matrix has no field".into(),
            ));
        };
        let mut det = first.one_like();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(det.zero_like());
            };
            if p != c {
                a.swap(p, c);
                det = det.neg();
            }
            let piv = a[c][c].clone();
            det = det.mul(&piv);
            let inv = piv.inv().expect("nonzero pivot");
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].mul(&inv);
                for k in c..n {
                    let t = f.mul(&a[c][k]);
                    a[r][k] = a[r][k].sub(&t);
                }
            }
        }
        Ok(det)
    }
}

impl Scalar for RealBall {
    fn zero_like(&self) -> Self {
        RealBall::zero(self.prec())
    }
    fn one_like(&self) -> Self {
        RealBall::one(self.prec())
    }
    fn add(&self, o: &Self) -> Self {
        RealBall::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RealBall::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RealBall::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        RealBall::div(self, o)
    }
    fn det(rows: Vec<Vec<Self>>) -> Result<Self> {
        let prec = rows.first().and_then(|r| r.first()).map_or(64, RealBall::prec);
        Ok(det_ball_matrix(rows, prec).value)
    }
}

/// Fraction-free Gaussian elimination over the integers.
pub fn bareiss_det(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..n {
            for k in c + 1..n {
                let v = &a[c][c] * &a[r][k] - &a[r][c] * &a[c][k];
                a[r][k] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[c][c].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

/// Determinant of a rational matrix: rows are cleared of denominators and
/// passed to [`bareiss_det`].
pub fn det_rational(rows: &[Vec<BigRational>]) -> BigRational {
    let mut scale = BigInt::one();
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| (x * &l).to_integer()).collect()
        })
        .collect();
    BigRational::new(bareiss_det(&ints), scale)
}

/// `Π_{j<k} (x_k - x_j)(y_k - y_j) / Π_{j,k} (x_j + y_k)`, which equals
/// `det[1/(x_j + y_k)]`.
pub fn cauchy_det<T: Scalar>(xs: &[T], ys: &[T]) -> Result<T> {
    if xs.len() != ys.len() {
        return Err(Error::Param(format!(
            "cauchy_det needs equal lengths, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    let Some(x0) = xs.first() else {
        return Err(Error::Param("cauchy_det needs at least one node".into()));
    };
    let mut num = x0.one_like();
    let mut den = x0.one_like();
    for k in 0..xs.len() {
        for j in 0..k {
            num = num.mul(&xs[k].sub(&xs[j])).mul(&ys[k].sub(&ys[j]));
        }
    }
    for x in xs {
        for y in ys {
            den = den.mul(&x.add(y));
        }
    }
    num.div(&den).map_err(|e| match e {
        Error::Domain(_) | Error::Undecided(_) => Error::Undecided("some x_j + y_k is not invertible".into()),
        other => other,
    })
}

/// Splits `det[x + a_jk]` as `det A + x det B` with
/// `B = [a_jk - a_j0 - a_0k + a_00]_{1 <= j,k <= n}`.
pub fn border_split<T: Scalar>(a: &[Vec<T>]) -> Result<(T, T)> {
    let n = a.len();
    if n == 0 || a.iter().any(|r| r.len() != n) {
        return Err(Error::Param("border_split needs a non-empty square matrix".into()));
    }
    let det_a = T::det(a.to_vec())?;
    if n == 1 {
        return Ok((det_a, a[0][0].one_like()));
    }
    let b: Vec<Vec<T>> = (1..n)
        .map(|j| {
            (1..n)
                .map(|k| a[j][k].sub(&a[j][0]).sub(&a[0][k]).add(&a[0][0]))
                .collect()
        })
        .collect();
    Ok((det_a, T::det(b)?))
}

/// `det[x + a_jk]`, computed directly.
pub fn det_shifted<T: Scalar>(a: &[Vec<T>], x: &T) -> Result<T> {
    T::det(a.iter().map(|r| r.iter().map(|v| v.add(x)).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::super::det_exact::entry_exact;
    use super::super::matrix::{build, MatrixSpec};
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn leibniz(a: &[Vec<BigRational>]) -> BigRational {
        let n = a.len();
        let mut total = BigRational::zero();
        let mut perm: Vec<usize> = (0..n).collect();
        fn rec(p: &mut Vec<usize>, i: usize, a: &[Vec<BigRational>], total: &mut BigRational) {
            if i == p.len() {
                let s = crate::ntheory::permutation_sign(p);
                let mut t = BigRational::from_integer(s.into());
                for (j, &k) in p.iter().enumerate() {
                    t *= &a[j][k];
                }
                *total += t;
                return;
            }
            for j in i..p.len() {
                p.swap(i, j);
                rec(p, i + 1, a, total);
                p.swap(i, j);
            }
        }
        rec(&mut perm, 0, a, &mut total);
        total
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(cauchy_det(&[q(2, 1)], &[q(3, 1)]).unwrap(), q(1, 5));
        assert_eq!(cauchy_det(&[q(1, 1), q(2, 1)], &[q(0, 1), q(1, 1)]).unwrap(), q(1, 12));
        assert!(matches!(cauchy_det(&[q(1, 1)], &[q(-1, 1)]), Err(Error::Undecided(_))));
        let b = RealBall::from_i64(1, 64);
        assert!(cauchy_det(std::slice::from_ref(&b), &[b.neg()]).is_err());
    }

    #[test]
    fn border_examples() {
        let (a, b) = border_split(&[vec![q(7, 1)]]).unwrap();
        assert_eq!((a, b), (q(7, 1), q(1, 1)));
        let m = vec![vec![q(0, 1), q(1, 1)], vec![q(2, 1), q(5, 1)]];
        let (a, b) = border_split(&m).unwrap();
        assert_eq!((a.clone(), b.clone()), (q(-2, 1), q(2, 1)));
        assert_eq!(det_shifted(&m, &q(1, 1)).unwrap(), a + b);
    }

    #[test]
    fn bareiss_small() {
        let m: Vec<Vec<BigInt>> = vec![
            vec![2.into(), 0.into(), 1.into()],
            vec![1.into(), 3.into(), 2.into()],
            vec![1.into(), 1.into(), 2.into()],
        ];
        assert_eq!(bareiss_det(&m), BigInt::from(6));
        assert_eq!(bareiss_det(&[]), BigInt::one());
    }

    #[test]
    fn odd_function_border_component_vanishes() {
        // tan(π a (j² - k²)/p) for 0 <= j,k <= n with n = (p-1)/2 odd
        for p in [7u64, 11] {
            let m = build(&MatrixSpec::TanQuad {
                p,
                a: 1,
                b: p as i64 - 1,
                delta: 0,
            })
            .unwrap();
            let a: Vec<Vec<CycloElement>> = (0..m.dim)
                .map(|j| (0..m.dim).map(|k| entry_exact(&m, j, k)).collect())
                .collect();
            let (det_a, det_b) = border_split(&a).unwrap();
            assert!(det_b.is_zero(), "p = {p}");
            for x in [1, 2] {
                let xe = CycloElement::from_int(det_a.field().clone(), x);
                assert_eq!(det_shifted(&a, &xe).unwrap(), det_a, "p = {p}, x = {x}");
            }
        }
    }

    fn rational() -> impl Strategy<Value = BigRational> {
        (-20i64..20, 1i64..7).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn cauchy_matches_direct(xs in prop::collection::vec(rational(), 1..=5), shift in 1i64..5) {
            let ys: Vec<BigRational> = xs.iter().enumerate()
                .map(|(i, x)| x * q(3, 1) + q(shift * 100 + i as i64, 1))
                .collect();
            prop_assume!(xs.iter().all(|x| ys.iter().all(|y| !(x + y).is_zero())));
            let direct: Vec<Vec<BigRational>> = xs.iter()
                .map(|x| ys.iter().map(|y| (x + y).recip()).collect())
                .collect();
            prop_assert_eq!(cauchy_det(&xs, &ys).unwrap(), det_rational(&direct));
        }

        #[test]
        fn border_identity(vals in prop::collection::vec(rational(), 16), x in prop::sample::select(vec![0i64, 1, -3])) {
            let m: Vec<Vec<BigRational>> = vals.chunks(4).map(|c| c.to_vec()).collect();
            let (a, b) = border_split(&m).unwrap();
            prop_assert_eq!(det_shifted(&m, &q(x, 1)).unwrap(), a + b * q(x, 1));
        }

        #[test]
        fn bareiss_matches_leibniz(vals in prop::collection::vec(rational(), 9..=9)) {
            let m: Vec<Vec<BigRational>> = vals.chunks(3).map(|c| c.to_vec()).collect();
            prop_assert_eq!(det_rational(&m), leibniz(&m));
        }
    }
}
