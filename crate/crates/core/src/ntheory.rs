//! Elementary number theory: residue symbols, modular square roots,
//! multiplication permutations and their signs, character sums.

use crate::error::{param, Result};
use serde::{Deserialize, Serialize};

/// A value of a Legendre or Jacobi symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymbolValue(i8);

impl SymbolValue {
    pub const ZERO: SymbolValue = SymbolValue(0);
    pub const PLUS: SymbolValue = SymbolValue(1);
    pub const MINUS: SymbolValue = SymbolValue(-1);

    pub fn from_sign(s: i64) -> SymbolValue {
        match s.signum() {
            0 => SymbolValue::ZERO,
            1 => SymbolValue::PLUS,
            _ => SymbolValue::MINUS,
        }
    }

    pub fn value(self) -> i64 {
        self.0 as i64
    }

    pub fn pow(self, e: u64) -> SymbolValue {
        match self.0 {
            0 if e > 0 => SymbolValue::ZERO,
            -1 if e % 2 == 1 => SymbolValue::MINUS,
            _ => SymbolValue::PLUS,
        }
    }
}

impl std::ops::Mul for SymbolValue {
    type Output = SymbolValue;
    fn mul(self, rhs: SymbolValue) -> SymbolValue {
        SymbolValue(self.0 * rhs.0)
    }
}

/// The sign of a permutation together with the permutation itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermSign {
    pub sign: i8,
    /// `witness[i]` is the image of the i-th element of the permuted set.
    pub witness: Vec<usize>,
}

impl PermSign {
    fn from_witness(witness: Vec<usize>) -> PermSign {
        PermSign {
            sign: permutation_sign(&witness),
            witness,
        }
    }
}

/// Sign of a permutation of `0..perm.len()`, via its cycle decomposition.
pub fn permutation_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i8;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len.is_multiple_of(2) {
            sign = -sign;
        }
    }
    sign
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::Integer::gcd(&a, &b)
}

/// Least nonnegative residue of `a` modulo `n`.
pub fn modp(a: i64, n: u64) -> u64 {
    a.rem_euclid(n as i64) as u64
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(n as i128) as u64)
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n > 2 && is_prime(n)
}

/// Odd primes in `lo..=hi`.
pub fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&p| is_prime(p)).collect()
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> Result<SymbolValue> {
    if n == 0 || n.is_multiple_of(2) {
        return param(format!("Jacobi symbol needs an odd positive modulus, got {n}"));
    }
    let mut a = modp(a, n);
    let mut n = n;
    let mut t = 1i64;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 {
        SymbolValue::from_sign(t)
    } else {
        SymbolValue::ZERO
    })
}

/// Legendre symbol for an odd prime; same as [`jacobi`] but states intent.
pub fn legendre(a: i64, p: u64) -> SymbolValue {
    jacobi(a, p).expect("odd modulus")
}

/// Least positive quadratic nonresidue modulo the odd prime `p`.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&r| legendre(r as i64, p) == SymbolValue::MINUS)
        .expect("an odd prime has a nonresidue")
}

/// The smaller square root of `a` modulo the odd prime `p`, or `None` for
/// a nonresidue.
pub fn sqrt_mod(a: i64, p: u64) -> Result<Option<u64>> {
    if !is_odd_prime(p) {
        return param(format!("sqrt_mod needs an odd prime modulus, got {p}"));
    }
    let a = modp(a, p);
    if a == 0 {
        return Ok(Some(0));
    }
    if legendre(a as i64, p) != SymbolValue::PLUS {
        return Ok(None);
    }
    let root = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        tonelli_shanks(a, p)
    };
    debug_assert_eq!(mul_mod(root, root, p), a);
    Ok(Some(root.min(p - root)))
}

fn tonelli_shanks(a: u64, p: u64) -> u64 {
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = least_nonresidue(p);
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

fn check_unit(a: i64, n: u64) -> Result<u64> {
    if n < 3 || n.is_multiple_of(2) {
        return param(format!("modulus must be odd and > 1, got {n}"));
    }
    let a = modp(a, n);
    if gcd(a, n) != 1 {
        return param(format!("gcd({a}, {n}) != 1"));
    }
    Ok(a)
}

/// The permutation `j -> a*j mod n` of `{0, ..., n-1}` and its sign.
pub fn zolotarev_sign(a: i64, n: u64) -> Result<PermSign> {
    let a = check_unit(a, n)?;
    let witness = (0..n).map(|j| mul_mod(a, j, n) as usize).collect();
    Ok(PermSign::from_witness(witness))
}

/// Folds a residue to its representative in `0..=n/2` up to sign.
pub fn fold(r: u64, n: u64) -> u64 {
    let r = r % n;
    r.min(n - r)
}

/// The permutation of `{1, ..., (n-1)/2}` sending `j` to the representative
/// of `±c*j mod n`. The witness is indexed from 0, i.e. entry `j-1` holds
/// `pi(j) - 1`.
pub fn pan_sign(c: i64, n: u64) -> Result<PermSign> {
    let c = check_unit(c, n)?;
    let half = (n - 1) / 2;
    let witness = (1..=half).map(|j| (fold(mul_mod(c, j, n), n) - 1) as usize).collect();
    Ok(PermSign::from_witness(witness))
}

/// `sum_{x=0}^{p-1} ((a0 x^2 + a1 x + a2)/p)` evaluated in closed form.
pub fn quad_char_sum(a0: i64, a1: i64, a2: i64, p: u64) -> Result<i64> {
    if !is_odd_prime(p) {
        return param(format!("quad_char_sum needs an odd prime, got {p}"));
    }
    if modp(a0, p) == 0 {
        return param("leading coefficient divisible by p");
    }
    let lead = legendre(a0, p).value();
    let disc = (a1 as i128) * (a1 as i128) - 4 * (a0 as i128) * (a2 as i128);
    Ok(if disc.rem_euclid(p as i128) == 0 {
        (p as i64 - 1) * lead
    } else {
        -lead
    })
}

/// Number of pairs `1 <= j, k <= (p-1)/2` with `a j^2 + b k^2 = m (mod p)`,
/// evaluated in closed form. Requires `(-ab/p) = -1`.
pub fn count_quad_reps(p: u64, a: i64, b: i64, m: i64) -> Result<u64> {
    if !is_odd_prime(p) {
        return param(format!("count_quad_reps needs an odd prime, got {p}"));
    }
    let ab = (a as i128 * b as i128).rem_euclid(p as i128) as i64;
    if ab == 0 || legendre(-ab, p) != SymbolValue::MINUS {
        return param("count_quad_reps needs (-ab/p) = -1");
    }
    if modp(m, p) == 0 {
        return Ok(0);
    }
    let minus_one = legendre(-1, p).value();
    let am = legendre(modp(a, p) as i64 * modp(m, p) as i64 % p as i64, p).value();
    let num = p as i64 - 1 - (1 - minus_one) * am;
    Ok((num / 4) as u64)
}

/// `((p-1)/2)! mod p`, folded to `±1`. For primes `p = 3 (mod 4)` the
/// factorial squares to 1.
pub fn half_factorial_sign(p: u64) -> Result<SymbolValue> {
    if !is_odd_prime(p) || p % 4 != 3 {
        return param(format!("half factorial sign needs a prime = 3 (mod 4), got {p}"));
    }
    let f = (1..=(p - 1) / 2).fold(1u64, |acc, k| mul_mod(acc, k, p));
    Ok(if f == 1 {
        SymbolValue::PLUS
    } else if f == p - 1 {
        SymbolValue::MINUS
    } else {
        unreachable!("((p-1)/2)!^2 = 1 mod p for p = 3 mod 4")
    })
}
