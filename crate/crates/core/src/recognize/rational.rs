use super::form::ClosedForm;
use crate::error::Result;
use crate::realball::RealBall;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Margin required at the refinement stage: the refined radius must be
/// `2^20` times smaller than the separation radius `1/(4B²)`.
const REFINE_MARGIN_BITS: i64 = 20;

fn separation_radius(bound: &BigInt) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(4) * bound * bound)
}

fn rad_rational(x: &RealBall) -> BigRational {
    x.rad().to_rational()
}

/// The unique rational with denominator at most `bound` inside `x`, found
/// among the continued-fraction convergents of the midpoint.
///
/// Needs `rad(x) < 1/(4B²)`, which makes such a rational unique.
pub fn recognize_rational(x: &RealBall, bound: &BigInt) -> Option<BigRational> {
    if !bound.is_positive() || rad_rational(x) >= separation_radius(bound) {
        return None;
    }
    let mid = x.mid().to_rational();
    let mut hits = convergents(&mid, bound).into_iter().filter(|c| x.contains_rational(c));
    let first = hits.next()?;
    hits.all(|c| c == first).then_some(first)
}

/// Two-stage recognition: the rational found at `prec` must remain inside
/// a recomputation at `2·prec` whose radius is at most
/// `2^-20 / (4B²)`.
pub fn recognize_rational_refined(
    eval: &dyn Fn(u32) -> Result<RealBall>,
    prec: u32,
    bound: &BigInt,
) -> Result<Option<BigRational>> {
    let x = eval(prec)?;
    let Some(cand) = recognize_rational(&x, bound) else {
        return Ok(None);
    };
    let refined = eval(2 * prec)?;
    let margin = separation_radius(bound) * BigRational::new(BigInt::one(), BigInt::one() << REFINE_MARGIN_BITS);
    Ok((refined.contains_rational(&cand) && rad_rational(&refined) <= margin).then_some(cand))
}

/// Convergents `h/k` of `q` with `k <= bound`.
fn convergents(q: &BigRational, bound: &BigInt) -> Vec<BigRational> {
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = q.clone();
    let mut out = Vec::new();
    loop {
        let a = rest.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > bound {
            break;
        }
        out.push(BigRational::new(h2.clone(), k2.clone()));
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
    }
    out
}

/// The unique integer `k` with `x / base` enclosing `k`, provided the
/// quotient has width below `1/2`.
pub fn recognize_integer_quotient(x: &RealBall, base: &RealBall) -> Option<BigInt> {
    let q = x.div(base).ok()?;
    // width 2·rad < 1/2
    if rad_rational(&q) * BigInt::from(4) >= BigRational::one() {
        return None;
    }
    let k = q.mid().to_rational().round().to_integer();
    q.contains_int(&k).then_some(k)
}

/// [`recognize_integer_quotient`] against a closed-form base.
pub fn recognize_integer_quotient_form(x: &RealBall, base: &ClosedForm) -> Option<BigInt> {
    if base.is_zero() {
        return None;
    }
    recognize_integer_quotient(x, &base.to_ball(x.prec() + 32))
}

/// Integer recognition: the unique integer in a ball of radius below 1/4.
pub fn recognize_integer(x: &RealBall) -> Option<BigInt> {
    recognize_integer_quotient(x, &RealBall::one(x.prec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detcore::{build, det_ball, MatrixSpec};
    use crate::realball::{pi, sqrt_u64, Dyadic};

    fn ball(q: BigRational, rad_pow2: i64) -> RealBall {
        RealBall::from_rational(&q, 128).add_error(&Dyadic::pow2(rad_pow2))
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_examples() {
        assert_eq!(
            recognize_rational(&ball(q(-2, 1), -100), &BigInt::from(1000)),
            Some(q(-2, 1))
        );
        assert_eq!(
            recognize_rational(&ball(q(1, 3), -100), &BigInt::from(1000)),
            Some(q(1, 3))
        );
        assert_eq!(
            recognize_rational(&pi(128).add_error(&Dyadic::pow2(-100)), &BigInt::from(10)),
            None
        );
        // radius too large for the bound
        assert_eq!(recognize_rational(&ball(q(1, 3), -10), &BigInt::from(1000)), None);
    }

    #[test]
    fn refined_recognition() {
        let eval = |prec: u32| Ok(RealBall::from_rational(&q(-7, 12), prec));
        assert_eq!(
            recognize_rational_refined(&eval, 64, &BigInt::from(100)).unwrap(),
            Some(q(-7, 12))
        );
        let pe = |prec: u32| Ok(pi(prec));
        assert_eq!(recognize_rational_refined(&pe, 64, &BigInt::from(10)).unwrap(), None);
    }

    #[test]
    fn integer_quotient_examples() {
        let m = build(&MatrixSpec::CotJk { p: 7 }).unwrap();
        let d = det_ball(&m, 128).unwrap().value;
        assert_eq!(
            recognize_integer_quotient(&d, &sqrt_u64(7, 128).mul_int(4)),
            Some(BigInt::from(-1))
        );
        let x = RealBall::from_i64(392, 64);
        assert_eq!(recognize_integer_quotient(&x, &x), Some(BigInt::one()));
        let wide = RealBall::from_i64(5, 64).add_error(&Dyadic::pow2(0));
        assert_eq!(recognize_integer_quotient(&wide, &RealBall::one(64)), None);
        assert_eq!(recognize_integer(&RealBall::from_i64(-9, 64)), Some(BigInt::from(-9)));
    }
}
