use super::ball::RealBall;
use super::complex::ComplexBall;
use super::dyadic::Dyadic;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// The angle `π·num/den`, kept with `0 <= num < 2·den`.
///
/// Tangent and cotangent only depend on `num mod den`, but sine and cosine
/// change sign under `num -> num + den`, so the wider range is retained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AngleFraction {
    pub num: u64,
    pub den: u64,
}

impl AngleFraction {
    pub fn new(num: i64, den: u64) -> AngleFraction {
        assert!(den > 0, "zero denominator");
        let m = 2 * den as i128;
        let r = (num as i128).rem_euclid(m) as u64;
        AngleFraction { num: r, den }
    }

    /// Residue of the numerator modulo `den` (the tangent period).
    pub fn half_turn_residue(&self) -> u64 {
        self.num % self.den
    }
}

fn atan_inv_fixed(x: u64, w: usize) -> (BigInt, u64) {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut term: BigInt = (BigInt::from(1) << w) / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &x2;
        k += 1;
    }
    // each term carries two truncations; the omitted tail is below one ulp
    (sum, 2 * k + 1)
}

type PiCache = Mutex<HashMap<usize, Arc<(BigInt, u64)>>>;

fn pi_fixed(w: usize) -> Arc<(BigInt, u64)> {
    static CACHE: OnceLock<PiCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&w) {
        return v.clone();
    }
    let (a, ea) = atan_inv_fixed(5, w);
    let (b, eb) = atan_inv_fixed(239, w);
    let p = a * 16 - b * 4;
    let v = Arc::new((p, 16 * ea + 4 * eb));
    cache.lock().unwrap().insert(w, v.clone());
    v
}

/// An enclosure of π.
pub fn pi(prec: u32) -> RealBall {
    let w = prec as usize + 64;
    let v = pi_fixed(w);
    RealBall::new(
        Dyadic::new(v.0.clone(), -(w as i64)),
        Dyadic::new(BigInt::from(v.1), -(w as i64)),
        prec,
    )
}

/// sin and cos of `π·n/d` for `0 <= n/d <= 1/4`, by alternating Taylor series.
fn sin_cos_small(n: u64, d: u64, prec: u32) -> (RealBall, RealBall) {
    if n == 0 {
        return (RealBall::zero(prec), RealBall::one(prec));
    }
    let wp = prec + 32;
    let x = pi(wp).mul_int(n as i64).div_int(d as i64);
    let x2 = x.sqr();
    let stop = Dyadic::pow2(-(wp as i64) - 4);

    // |x| <= π/4 < 1, so terms decrease and each tail is bounded by the last term
    let series = |first: RealBall, offset: i64| -> RealBall {
        let mut term = first.clone();
        let mut sum = first;
        let mut k: i64 = 1;
        loop {
            let a = 2 * k + offset - 1;
            term = term.mul(&x2).div_int(a * (a + 1)).neg();
            sum = sum.add(&term);
            if term.mag() < stop {
                break sum.add_error(&term.mag());
            }
            k += 1;
        }
    };
    let c = series(RealBall::one(wp), 0).with_prec(prec);
    let s = if 6 * n == d {
        RealBall::exact(Dyadic::pow2(-1), prec)
    } else {
        series(x.clone(), 1).with_prec(prec)
    };
    (s, c)
}

fn reduce_fraction(n: u64, d: u64) -> (u64, u64) {
    let g = crate::ntheory::gcd(n, d).max(1);
    (n / g, d / g)
}

/// `(sin πr/den, cos πr/den)` by reduction to `[0, π/4]`.
pub fn sin_cos_pi(f: &AngleFraction, prec: u32) -> (RealBall, RealBall) {
    let den = f.den;
    let mut r = f.num;
    let mut sin_neg = false;
    let mut cos_neg = false;
    if r >= den {
        r -= den;
        sin_neg = true;
        cos_neg = true;
    }
    if 2 * r > den {
        r = den - r;
        cos_neg = !cos_neg;
    }
    let (s, c) = if 4 * r > den {
        let (n, d) = reduce_fraction(den - 2 * r, 2 * den);
        let (s, c) = sin_cos_small(n, d, prec);
        (c, s)
    } else {
        let (n, d) = reduce_fraction(r, den);
        sin_cos_small(n, d, prec)
    };
    (if sin_neg { s.neg() } else { s }, if cos_neg { c.neg() } else { c })
}

pub fn sin_pi(f: &AngleFraction, prec: u32) -> RealBall {
    sin_cos_pi(f, prec).0
}

pub fn cos_pi(f: &AngleFraction, prec: u32) -> RealBall {
    sin_cos_pi(f, prec).1
}

/// `tan(π·num/den)` for odd `den`.
pub fn tan_pi(f: &AngleFraction, prec: u32) -> Result<RealBall> {
    if f.den.is_multiple_of(2) {
        return Err(Error::Param(format!("tan_pi needs an odd denominator, got {}", f.den)));
    }
    let r = f.half_turn_residue();
    if r == 0 {
        return Ok(RealBall::zero(prec));
    }
    let (s, c) = sin_cos_pi(&AngleFraction::new(r as i64, f.den), prec + 8);
    Ok(s.div(&c)?.with_prec(prec))
}

/// `cot(π·num/den)`; a pole when `den | num`.
pub fn cot_pi(f: &AngleFraction, prec: u32) -> Result<RealBall> {
    let r = f.half_turn_residue();
    let den = f.den;
    if r == 0 {
        return Err(Error::Domain(format!("cot pole at {}/{}", f.num, den)));
    }
    if 2 * r == den {
        return Ok(RealBall::zero(prec));
    }
    if 4 * r == den {
        return Ok(RealBall::one(prec));
    }
    if 4 * r == 3 * den {
        return Ok(RealBall::from_i64(-1, prec));
    }
    let (s, c) = sin_cos_pi(&AngleFraction::new(r as i64, den), prec + 8);
    Ok(c.div(&s)?.with_prec(prec))
}

/// `e^{2πik/m}`.
pub fn root_of_unity(k: i64, m: u64, prec: u32) -> ComplexBall {
    let f = AngleFraction::new(2 * k, m);
    let (s, c) = sin_cos_pi(&f, prec);
    ComplexBall::new(c, s)
}

/// An enclosure of `√n`, exact when `n` is a perfect square.
pub fn sqrt_int(n: &BigInt, prec: u32) -> Result<RealBall> {
    if n.is_negative() {
        return Err(Error::Param(format!("sqrt_int of negative {n}")));
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        return Ok(RealBall::from_int(&r, prec));
    }
    let k = (prec as i64 - (n.bits() as i64) / 2).max(0) as usize + 4;
    let s = (n << (2 * k)).sqrt();
    // √n lies in (s, s+1)·2^{-k}
    let mid = Dyadic::new((s << 1usize) + 1, -(k as i64) - 1);
    let rad = Dyadic::pow2(-(k as i64) - 1);
    Ok(RealBall::new(mid, rad, prec))
}

pub fn sqrt_u64(n: u64, prec: u32) -> RealBall {
    sqrt_int(&BigInt::from(n), prec).expect("nonnegative")
}

/// Every sin/cos/tan/cot value at `π·r/den`, shared across matrix entries.
#[derive(Debug)]
pub struct TrigTable {
    pub den: u64,
    pub prec: u32,
    sin: Vec<RealBall>,
    cos: Vec<RealBall>,
    tan: Vec<Option<RealBall>>,
    cot: Vec<Option<RealBall>>,
}

impl TrigTable {
    fn compute(den: u64, prec: u32) -> TrigTable {
        let mut sin = Vec::with_capacity(2 * den as usize);
        let mut cos = Vec::with_capacity(2 * den as usize);
        for r in 0..2 * den {
            let (s, c) = sin_cos_pi(&AngleFraction { num: r, den }, prec + 8);
            sin.push(s);
            cos.push(c);
        }
        let mut tan = Vec::with_capacity(den as usize);
        let mut cot = Vec::with_capacity(den as usize);
        for r in 0..den as usize {
            let f = AngleFraction { num: r as u64, den };
            tan.push(if den % 2 == 1 {
                if r == 0 {
                    Some(RealBall::zero(prec))
                } else {
                    sin[r].div(&cos[r]).ok().map(|b| b.with_prec(prec))
                }
            } else {
                tan_pi(&f, prec).ok()
            });
            cot.push(if r == 0 {
                None
            } else if 2 * r as u64 == den || 4 * r as u64 == den || 4 * r as u64 == 3 * den {
                cot_pi(&f, prec).ok()
            } else {
                cos[r].div(&sin[r]).ok().map(|b| b.with_prec(prec))
            });
        }
        TrigTable {
            den,
            prec,
            sin: sin.into_iter().map(|b| b.with_prec(prec)).collect(),
            cos: cos.into_iter().map(|b| b.with_prec(prec)).collect(),
            tan,
            cot,
        }
    }

    /// The cached table for `(den, prec)`.
    pub fn get(den: u64, prec: u32) -> Arc<TrigTable> {
        type Cache = Mutex<HashMap<(u64, u32), Arc<TrigTable>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = cache.lock().unwrap().get(&(den, prec)) {
            return t.clone();
        }
        let t = Arc::new(TrigTable::compute(den, prec));
        cache.lock().unwrap().entry((den, prec)).or_insert(t).clone()
    }

    /// `sin(π r/den)` with `r` taken modulo `2·den`.
    pub fn sin(&self, r: u64) -> &RealBall {
        &self.sin[(r % (2 * self.den)) as usize]
    }

    pub fn cos(&self, r: u64) -> &RealBall {
        &self.cos[(r % (2 * self.den)) as usize]
    }

    pub fn tan(&self, r: u64) -> Result<&RealBall> {
        self.tan[(r % self.den) as usize]
            .as_ref()
            .ok_or_else(|| Error::Domain(format!("tan undefined at {r}/{}", self.den)))
    }

    pub fn cot(&self, r: u64) -> Result<&RealBall> {
        self.cot[(r % self.den) as usize]
            .as_ref()
            .ok_or_else(|| Error::Domain(format!("cot pole at {r}/{}", self.den)))
    }
}
