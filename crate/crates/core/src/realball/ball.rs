use super::dyadic::{Dyadic, Round};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use std::fmt;

/// Mantissa bits kept for radii. Radii are always rounded upward.
const RAD_BITS: u32 = 32;

/// A real interval `[mid - rad, mid + rad]` that contains the true value.
///
/// Every operation computes the rounding error of its midpoint exactly and
/// folds it into the radius, so containment survives arbitrary chains of
/// arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealBall {
    mid: Dyadic,
    rad: Dyadic,
    prec: u32,
}

fn up(x: Dyadic) -> Dyadic {
    x.round_up_mag(RAD_BITS)
}

impl RealBall {
    pub fn new(mid: Dyadic, rad: Dyadic, prec: u32) -> RealBall {
        assert!(!rad.is_negative(), "negative radius");
        let r = mid.round(prec, Round::Nearest);
        let err = r.sub(&mid).abs();
        RealBall {
            mid: r,
            rad: up(rad.add(&err)),
            prec,
        }
    }

    pub fn exact(mid: Dyadic, prec: u32) -> RealBall {
        RealBall::new(mid, Dyadic::zero(), prec)
    }

    pub fn zero(prec: u32) -> RealBall {
        RealBall::exact(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> RealBall {
        RealBall::exact(Dyadic::one(), prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> RealBall {
        RealBall::exact(Dyadic::from_i64(v), prec)
    }

    pub fn from_int(v: &BigInt, prec: u32) -> RealBall {
        RealBall::exact(Dyadic::from_int(v.clone()), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> RealBall {
        let (d, err) = Dyadic::from_rational(q, prec + 2);
        RealBall::new(d, err, prec)
    }

    /// `[lo, hi]` as a ball.
    pub fn from_bounds(lo: &Dyadic, hi: &Dyadic, prec: u32) -> RealBall {
        assert!(lo <= hi);
        let mid = lo.add(hi).mul_2exp(-1);
        let rad = hi.sub(lo).mul_2exp(-1);
        RealBall::new(mid, rad, prec)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> RealBall {
        RealBall::new(self.mid.clone(), self.rad.clone(), prec)
    }

    /// Widens the ball by `r`.
    pub fn add_error(&self, r: &Dyadic) -> RealBall {
        RealBall {
            mid: self.mid.clone(),
            rad: up(self.rad.add(&r.abs())),
            prec: self.prec,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad)
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad)
    }

    /// Upper bound on `|x|` over the ball.
    pub fn mag(&self) -> Dyadic {
        self.mid.abs().add(&self.rad)
    }

    /// Lower bound on `|x|` over the ball (0 if the ball meets 0).
    pub fn mig(&self) -> Dyadic {
        let d = self.mid.abs().sub(&self.rad);
        if d.is_negative() {
            Dyadic::zero()
        } else {
            d
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.mid.sub(x).abs() <= self.rad
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let d = (self.mid.to_rational() - q).abs();
        d <= self.rad.to_rational()
    }

    pub fn contains_int(&self, k: &BigInt) -> bool {
        self.contains(&Dyadic::from_int(k.clone()))
    }

    /// True when `other` lies entirely inside `self`.
    pub fn contains_ball(&self, other: &RealBall) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &RealBall) -> bool {
        self.mid.sub(&other.mid).abs() <= self.rad.add(&other.rad)
    }

    /// +1 or -1 when the ball excludes zero.
    pub fn sign(&self) -> Option<i32> {
        if self.contains_zero() {
            None
        } else {
            Some(self.mid.signum())
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Some(1)
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Some(-1)
    }

    /// `log2` of the radius relative to the midpoint, for diagnostics.
    pub fn rel_accuracy_bits(&self) -> i64 {
        if self.rad.is_zero() {
            return i64::MAX;
        }
        if self.mid.is_zero() {
            return i64::MIN;
        }
        self.mid.mag_exp() - self.rad.mag_exp()
    }

    pub fn neg(&self) -> RealBall {
        RealBall {
            mid: self.mid.neg(),
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> RealBall {
        if self.mid.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    fn finish(exact_mid: Dyadic, rad: Dyadic, prec: u32) -> RealBall {
        RealBall::new(exact_mid, rad, prec)
    }

    pub fn add(&self, o: &RealBall) -> RealBall {
        let prec = self.prec.max(o.prec);
        RealBall::finish(self.mid.add(&o.mid), self.rad.add(&o.rad), prec)
    }

    pub fn sub(&self, o: &RealBall) -> RealBall {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RealBall) -> RealBall {
        let prec = self.prec.max(o.prec);
        let rad = self
            .mid
            .abs()
            .mul(&o.rad)
            .add(&o.mid.abs().mul(&self.rad))
            .add(&self.rad.mul(&o.rad));
        RealBall::finish(self.mid.mul(&o.mid), rad, prec)
    }

    pub fn sqr(&self) -> RealBall {
        let m = self.mid.abs();
        let rad = m.mul(&self.rad).mul_2exp(1).add(&self.rad.mul(&self.rad));
        RealBall::finish(self.mid.mul(&self.mid), rad, self.prec)
    }

    pub fn mul_int(&self, k: i64) -> RealBall {
        let rad = self.rad.mul_int(k.abs());
        RealBall::finish(self.mid.mul_int(k), rad, self.prec)
    }

    pub fn mul_bigint(&self, k: &BigInt) -> RealBall {
        self.mul(&RealBall::from_int(k, self.prec))
    }

    pub fn mul_2exp(&self, k: i64) -> RealBall {
        RealBall {
            mid: self.mid.mul_2exp(k),
            rad: self.rad.mul_2exp(k),
            prec: self.prec,
        }
    }

    /// Division by a nonzero integer.
    pub fn div_int(&self, k: i64) -> RealBall {
        assert!(k != 0, "division by zero");
        let kd = Dyadic::from_i64(k);
        let q = self.mid.div_round(&kd, self.prec + 2, Round::Nearest);
        // |q - mid/k| = |q*k - mid| / |k|
        let err = q
            .mul(&kd)
            .sub(&self.mid)
            .abs()
            .div_round(&kd.abs(), RAD_BITS, Round::Ceil);
        let rad = self.rad.div_round(&kd.abs(), RAD_BITS, Round::Ceil);
        RealBall::finish(q, rad.add(&err), self.prec)
    }

    /// Quotient; fails when the divisor's enclosure contains zero.
    pub fn div(&self, o: &RealBall) -> Result<RealBall> {
        if o.contains_zero() {
            return Err(Error::Undecided("divisor enclosure contains zero".into()));
        }
        let prec = self.prec.max(o.prec);
        let q = self.mid.div_round(&o.mid, prec + 2, Round::Nearest);
        let b = o.mid.abs();
        let midpoint_err = q.mul(&o.mid).sub(&self.mid).abs().div_round(&b, RAD_BITS, Round::Ceil);
        // |a/b - ma/mb| <= (|mb| ra + |ma| rb) / (|mb| (|mb| - rb))
        let num = b.mul(&self.rad).add(&self.mid.abs().mul(&o.rad));
        let den = b.mul(&b.sub(&o.rad));
        let prop = if num.is_zero() {
            Dyadic::zero()
        } else {
            num.div_round(&den, RAD_BITS, Round::Ceil)
        };
        Ok(RealBall::finish(q, prop.add(&midpoint_err), prec))
    }

    pub fn inv(&self) -> Result<RealBall> {
        RealBall::one(self.prec).div(self)
    }

    pub fn pow(&self, mut e: u64) -> RealBall {
        let mut base = self.clone();
        let mut acc = RealBall::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    /// Integer power with a possibly negative exponent.
    pub fn powi(&self, e: i64) -> Result<RealBall> {
        let p = self.pow(e.unsigned_abs());
        if e < 0 {
            p.inv()
        } else {
            Ok(p)
        }
    }

    /// Smallest ball containing both.
    pub fn union(&self, o: &RealBall) -> RealBall {
        let lo = self.lower().min(o.lower());
        let hi = self.upper().max(o.upper());
        RealBall::from_bounds(&lo, &hi, self.prec.max(o.prec))
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// The midpoint as a decimal string with about `prec * log10(2)` digits.
    pub fn mid_decimal(&self) -> String {
        let digits = ((self.prec as f64) * std::f64::consts::LOG10_2).ceil() as usize;
        to_decimal(&self.mid, digits.clamp(6, 60), Round::Nearest)
    }

    /// An upper bound on the radius in short decimal scientific form.
    pub fn rad_decimal(&self) -> String {
        to_decimal(&self.rad, 3, Round::Ceil)
    }
}

impl fmt::Display for RealBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- {}]", self.mid_decimal(), self.rad_decimal())
    }
}

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

/// Scientific notation `d.ddd…e±k` with `digits` significant digits.
///
/// `Round::Ceil` rounds the magnitude up, which keeps printed radii valid
/// upper bounds.
pub fn to_decimal(x: &Dyadic, digits: usize, mode: Round) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let q = x.to_rational();
    let neg = q.is_negative();
    let a = q.abs();
    // estimate the decimal exponent from the binary one, then correct
    let mut k = ((x.mag_exp() as f64 - 1.0) * std::f64::consts::LOG10_2).floor() as i64;
    let scale = |k: i64| -> BigRational {
        let s = digits as i64 - 1 - k;
        if s >= 0 {
            &a * BigRational::from_integer(pow10(s as u32))
        } else {
            &a / BigRational::from_integer(pow10((-s) as u32))
        }
    };
    let lo = pow10(digits as u32 - 1);
    let hi = pow10(digits as u32);
    let mut scaled;
    loop {
        scaled = scale(k);
        if scaled < BigRational::from_integer(lo.clone()) {
            k -= 1;
        } else if scaled >= BigRational::from_integer(hi.clone()) {
            k += 1;
        } else {
            break;
        }
    }
    let mut n = match mode {
        Round::Ceil => scaled.ceil().to_integer(),
        Round::Floor => scaled.floor().to_integer(),
        Round::Nearest => scaled.round().to_integer(),
    };
    if n == hi {
        n = lo.clone();
        k += 1;
    }
    let s = n.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    let body = if tail.is_empty() {
        head.to_string()
    } else {
        format!("{head}.{tail}")
    };
    if k == 0 {
        format!("{sign}{body}")
    } else {
        format!("{sign}{body}e{k}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_enclosure() {
        let b = RealBall::from_rational(&q(1, 3), 100);
        assert!(b.contains_rational(&q(1, 3)));
        assert!(b.rel_accuracy_bits() >= 98);
        let exact = RealBall::from_rational(&q(3, 8), 10);
        assert!(exact.is_exact());
    }

    #[test]
    fn division_contains_quotient() {
        let a = RealBall::from_rational(&q(2, 7), 80);
        let b = RealBall::from_rational(&q(-5, 11), 80);
        let c = a.div(&b).unwrap();
        assert!(c.contains_rational(&q(-22, 35)));
        assert!(RealBall::one(64)
            .div(&RealBall::new(Dyadic::zero(), Dyadic::one(), 64))
            .is_err());
    }

    #[test]
    fn decimal_rendering() {
        let b = RealBall::from_i64(392, 64);
        assert_eq!(b.mid_decimal(), "3.92e2");
        let t = RealBall::from_rational(&q(-1, 3), 64);
        assert!(t.mid_decimal().starts_with("-3.33333"));
        assert_eq!(to_decimal(&Dyadic::pow2(-1), 3, Round::Ceil), "5e-1");
    }

    #[test]
    fn powers() {
        let two = RealBall::from_i64(2, 64);
        assert_eq!(two.pow(10), RealBall::from_i64(1024, 64));
        assert!(two.powi(-3).unwrap().contains_rational(&q(1, 8)));
    }
}
