use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// An exact binary fraction `man * 2^exp`.
///
/// Kept normalized: the mantissa is odd, or zero with `exp == 0`, so
/// structural equality is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Floor,
    Ceil,
    Nearest,
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Dyadic {
        if man.is_zero() {
            return Dyadic::zero();
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        Dyadic {
            man: man >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Dyadic {
        Dyadic {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Dyadic {
        Dyadic::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Dyadic {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_int(v: BigInt) -> Dyadic {
        Dyadic::new(v, 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Dyadic {
        Dyadic {
            man: BigInt::one(),
            exp: e,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    /// Bit length of the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// An integer `e` with `|self| < 2^e` (tight to one bit). Zero maps to `i64::MIN / 2`.
    pub fn mag_exp(&self) -> i64 {
        if self.is_zero() {
            i64::MIN / 2
        } else {
            self.exp + self.man.bits() as i64
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            man: -&self.man,
            exp: self.exp,
        }
    }

    pub fn mul_2exp(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            man: self.man.clone(),
            exp: self.exp + k,
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as usize;
        let b = &other.man << (other.exp - e) as usize;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() || other.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            man: &self.man * &other.man,
            exp: self.exp + other.exp,
        }
    }

    pub fn mul_int(&self, k: i64) -> Dyadic {
        Dyadic::new(&self.man * k, self.exp)
    }

    /// Rounds to at most `prec` mantissa bits in the given direction.
    pub fn round(&self, prec: u32, mode: Round) -> Dyadic {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let neg = self.man.is_negative();
        let mag = self.man.abs();
        let mut q: BigInt = &mag >> shift as usize;
        let rem_nonzero = mag.trailing_zeros().unwrap_or(0) < shift;
        let bump = match mode {
            Round::Floor => neg && rem_nonzero,
            Round::Ceil => !neg && rem_nonzero,
            Round::Nearest => mag.bit(shift - 1),
        };
        if bump {
            q += 1;
        }
        if neg {
            q = -q;
        }
        Dyadic::new(q, self.exp + shift as i64)
    }

    /// Upper bound for a nonnegative value with a short mantissa, used for radii.
    pub fn round_up_mag(&self, bits: u32) -> Dyadic {
        debug_assert!(!self.is_negative());
        self.round(bits, Round::Ceil)
    }

    /// `self / other` rounded to `prec` bits, toward the given direction.
    pub fn div_round(&self, other: &Dyadic, prec: u32, mode: Round) -> Dyadic {
        assert!(!other.is_zero(), "division by zero dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // want >= prec + 2 quotient bits
        let shift = (prec as i64 + 2 + other.man.bits() as i64 - self.man.bits() as i64).max(0);
        let num = &self.man << shift as usize;
        let (q, r) = num.div_mod_floor(&other.man);
        let exp = self.exp - other.exp - shift;
        // An inexact quotient lies strictly inside (q, q+1); replacing it by
        // q + 1/2 does not move it across any rounding boundary at `prec` bits.
        let q2: BigInt = if r.is_zero() { q << 1usize } else { (q << 1usize) + 1 };
        Dyadic::new(q2, exp - 1).round(prec, mode)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as usize)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Nearest-ish dyadic to a rational with `prec` bits, plus an exact bound
    /// on the error.
    pub fn from_rational(q: &BigRational, prec: u32) -> (Dyadic, Dyadic) {
        let num = Dyadic::from_int(q.numer().clone());
        let den = Dyadic::from_int(q.denom().clone());
        if den == Dyadic::one() {
            let r = num.round(prec, Round::Nearest);
            let err = r.sub(&num).abs();
            return (r, err);
        }
        let lo = num.div_round(&den, prec, Round::Floor);
        let hi = num.div_round(&den, prec, Round::Ceil);
        let err = hi.sub(&lo);
        (lo, err)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.man >> shift as usize).to_f64().unwrap_or(f64::NAN);
        let e = self.exp + shift;
        if e > 2000 {
            return top.signum() * f64::INFINITY;
        }
        if e < -2000 {
            return 0.0;
        }
        top * (2f64).powi(e as i32)
    }

    /// `floor(self)` as an integer.
    pub fn floor_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as usize
        } else {
            self.man.div_floor(&(BigInt::one() << (-self.exp) as usize))
        }
    }

    pub fn ceil_int(&self) -> BigInt {
        -self.neg().floor_int()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub(other).signum().cmp(&0)
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Dyadic {
        Dyadic::from_i64(v)
    }
}
