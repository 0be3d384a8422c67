//! Class numbers and fundamental units of `Q(√p)` and `Q(√-p)` for primes `p`.

use crate::error::{param, Error, Result};
use crate::ntheory::{gcd, half_factorial_sign, is_odd_prime, legendre, SymbolValue};
use crate::realball::{sin_pi, sqrt_u64, AngleFraction, RealBall};
use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

fn require_prime_mod4(p: u64, residue: u64) -> Result<()> {
    if !is_odd_prime(p) || p % 4 != residue {
        return param(format!("expected a prime = {residue} (mod 4), got {p}"));
    }
    Ok(())
}

/// `h(-p)` from the character sum over the first half of the residues.
pub fn class_number_imag(p: u64) -> Result<u64> {
    require_prime_mod4(p, 3)?;
    if p == 3 {
        return Ok(1);
    }
    let s: i64 = (1..=(p - 1) / 2).map(|k| legendre(k as i64, p).value()).sum();
    let d = 2 - legendre(2, p).value();
    debug_assert!(s > 0 && s % d == 0);
    Ok((s / d) as u64)
}

/// `h(-p)` by counting reduced forms `ax² + bxy + cy²` of discriminant `-p`.
pub fn class_number_imag_oracle(p: u64) -> Result<u64> {
    require_prime_mod4(p, 3)?;
    let mut count = 0;
    // reduced forms have a <= sqrt(p/3)
    let mut a: i64 = 1;
    while 3 * a * a <= p as i64 {
        for b in -a + 1..=a {
            let num = b * b + p as i64;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if gcd(gcd(a as u64, b.unsigned_abs()), c as u64) == 1 {
                count += 1;
            }
        }
        a += 1;
    }
    Ok(count)
}

/// The unit `(u + v√p)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitPair {
    pub u: BigInt,
    pub v: BigInt,
}

impl UnitPair {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>) -> UnitPair {
        UnitPair {
            u: u.into(),
            v: v.into(),
        }
    }

    pub fn one() -> UnitPair {
        UnitPair::new(2, 0)
    }

    /// `u² - p v²`, which is `±4` for a unit.
    pub fn norm4(&self, p: u64) -> BigInt {
        &self.u * &self.u - BigInt::from(p) * &self.v * &self.v
    }

    pub fn mul(&self, o: &UnitPair, p: u64) -> UnitPair {
        let pb = BigInt::from(p);
        let u = (&self.u * &o.u + &pb * &self.v * &o.v) / 2;
        let v = (&self.u * &o.v + &o.u * &self.v) / 2;
        UnitPair { u, v }
    }

    /// Inverse of a unit, using `ε·ε̄ = N(ε) = ±1`.
    pub fn inv(&self, p: u64) -> UnitPair {
        let n = self.norm4(p) / BigInt::from(4);
        UnitPair {
            u: &self.u * &n,
            v: -(&self.v * &n),
        }
    }

    pub fn to_ball(&self, p: u64, prec: u32) -> RealBall {
        let s = sqrt_u64(p, prec + 16);
        RealBall::from_int(&self.u, prec + 16)
            .add(&s.mul_bigint(&self.v))
            .mul_2exp(-1)
            .with_prec(prec)
    }
}

/// The fundamental unit `ε_p = (u + v√p)/2` for a prime `p = 1 (mod 4)`.
///
/// Runs the continued fraction of `θ = (√p - 1)/2`; a convergent `h/k`
/// gives the candidate `(2h + k + k√p)/2`, and the first one of norm `±1`
/// is the fundamental unit.
pub fn fundamental_unit(p: u64) -> Result<UnitPair> {
    require_prime_mod4(p, 1)?;
    let d = p as i64;
    let s = (p as i64).sqrt();
    // θ = (P + √d)/Q
    let (mut pp, mut qq): (i64, i64) = (-1, 2);
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    for _ in 0..100_000 {
        let a = if qq > 0 {
            (pp + s).div_euclid(qq)
        } else {
            (pp + s + 1).div_euclid(qq)
        };
        let h = BigInt::from(a) * &h1 + &h0;
        let k = BigInt::from(a) * &k1 + &k0;
        let cand = UnitPair {
            u: BigInt::from(2) * &h + &k,
            v: k.clone(),
        };
        if cand.norm4(p).abs() == BigInt::from(4) && cand.v.is_positive() {
            return Ok(cand);
        }
        (h0, h1) = (h1, h);
        (k0, k1) = (k1, k);
        pp = a * qq - pp;
        qq = (d - pp * pp) / qq;
    }
    Err(Error::Internal(format!("no unit found for p = {p}")))
}

/// `pair^e`, exactly. `e = 0` gives `(2, 0)`.
pub fn unit_power(pair: &UnitPair, p: u64, e: u64) -> UnitPair {
    let mut acc = UnitPair::one();
    let mut base = pair.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base, p);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base, p);
        }
    }
    acc
}

/// `pair^e` for an arbitrary integer exponent.
pub fn unit_power_signed(pair: &UnitPair, p: u64, e: i64) -> UnitPair {
    let r = unit_power(pair, p, e.unsigned_abs());
    if e < 0 {
        r.inv(p)
    } else {
        r
    }
}

/// `Π_{(j/p)=-1} sin(πj/p) / Π_{(j/p)=1} sin(πj/p)` over `1 <= j <= (p-1)/2`,
/// which equals `ε_p^{h(p)}`.
pub fn sine_ratio(p: u64, prec: u32) -> Result<RealBall> {
    let wp = prec + 32;
    let mut num = RealBall::one(wp);
    let mut den = RealBall::one(wp);
    for j in 1..=(p - 1) / 2 {
        let s = sin_pi(&AngleFraction::new(j as i64, p), wp);
        if legendre(j as i64, p) == SymbolValue::MINUS {
            num = num.mul(&s);
        } else {
            den = den.mul(&s);
        }
    }
    Ok(num.div(&den)?.with_prec(prec))
}

/// `h(p)` for a prime `p = 1 (mod 4)`, certified by `ε^{2h-1} < R² < ε^{2h+1}`.
pub fn class_number_real(p: u64, prec: u32) -> Result<u64> {
    require_prime_mod4(p, 1)?;
    let eps = fundamental_unit(p)?;
    let e = eps.to_ball(p, prec);
    let r = sine_ratio(p, prec)?;
    let guess = (r.to_f64().ln() / e.to_f64().ln()).round();
    if !guess.is_finite() || guess < 1.0 {
        return Err(Error::Undecided(format!("h({p}) estimate {guess}")));
    }
    let h = guess as u64;
    let r2 = r.sqr();
    let below = e.pow(2 * h - 1);
    let above = e.pow(2 * h + 1);
    if below.upper() < r2.lower() && r2.upper() < above.lower() {
        if !r.overlaps(&e.pow(h)) {
            return Err(Error::Internal(format!(
                "sine ratio for p = {p} is not a power of the fundamental unit"
            )));
        }
        Ok(h)
    } else {
        Err(Error::Undecided(format!("h({p}) not separated at {prec} bits")))
    }
}

/// `((p-1)/2)! mod p` folded to `±1`, for primes `p = 3 (mod 4)`, `p > 3`.
pub fn mordell_sign(p: u64) -> Result<SymbolValue> {
    require_prime_mod4(p, 3)?;
    if p <= 3 {
        return param("mordell_sign needs p > 3");
    }
    half_factorial_sign(p)
}

/// `(-1)^{(h(-p)+1)/2}`, the value the factorial is congruent to.
pub fn mordell_prediction(p: u64) -> Result<SymbolValue> {
    let h = class_number_imag(p)?;
    if h % 2 == 0 {
        return Err(Error::Internal(format!("h(-{p}) = {h} is even")));
    }
    Ok(SymbolValue::MINUS.pow(h.div_ceil(2)))
}

/// The quadratic-field invariants that a prime `p` needs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadInvariants {
    pub p: u64,
    pub h_minus: Option<u64>,
    pub h_plus: Option<u64>,
    pub eps: Option<UnitPair>,
}

impl QuadInvariants {
    pub fn compute(p: u64) -> Result<QuadInvariants> {
        if !is_odd_prime(p) {
            return param(format!("{p} is not an odd prime"));
        }
        if p % 4 == 3 {
            return Ok(QuadInvariants {
                p,
                h_minus: Some(class_number_imag(p)?),
                h_plus: None,
                eps: None,
            });
        }
        let mut prec = 128;
        let h = loop {
            match class_number_real(p, prec) {
                Err(Error::Undecided(_)) if prec < 4096 => prec *= 2,
                other => break other?,
            }
        };
        Ok(QuadInvariants {
            p,
            h_minus: None,
            h_plus: Some(h),
            eps: Some(fundamental_unit(p)?),
        })
    }
}
