//! Exact arithmetic in `Q(ζ_m)` using the power basis modulo `Φ_m`.

use crate::ntheory::{gcd, legendre, SymbolValue};
use crate::realball::{root_of_unity, ComplexBall, RealBall};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// `Φ_m` with integer coefficients, lowest degree first.
pub fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by every Φ_d with d | m, d < m
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    cache.lock().unwrap().insert(m, num.clone());
    num
}

/// Exact quotient by a monic divisor.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let dq = a.len() - 1 - db;
    let mut q = vec![BigInt::zero(); dq + 1];
    for i in (0..=dq).rev() {
        let c = r[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    q
}

pub fn euler_phi(m: u64) -> u64 {
    (1..=m).filter(|&k| gcd(k, m) == 1).count() as u64
}

/// The field `Q(ζ_m)` with the reductions `x^k mod Φ_m` for `0 <= k < m`.
#[derive(Debug)]
pub struct CycloField {
    m: u64,
    phi: usize,
    pow_table: Vec<Vec<BigInt>>,
}

impl CycloField {
    pub fn get(m: u64) -> Arc<CycloField> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&m) {
            return f.clone();
        }
        let f = Arc::new(CycloField::build(m));
        cache.lock().unwrap().entry(m).or_insert(f).clone()
    }

    fn build(m: u64) -> CycloField {
        assert!(m >= 1);
        let poly = cyclotomic_poly(m);
        let phi = poly.len() - 1;
        let mut pow_table = Vec::with_capacity(m as usize);
        let mut cur = vec![BigInt::zero(); phi];
        if phi > 0 {
            cur[0] = BigInt::one();
        }
        for _ in 0..m {
            pow_table.push(cur.clone());
            // multiply by x and reduce the overflow coefficient with Φ_m
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for i in 0..phi {
                    cur[i] -= &top * &poly[i];
                }
            }
        }
        CycloField { m, phi, pow_table }
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Coefficients of `x^k mod Φ_m` for `0 <= k < m`.
    pub fn power(&self, k: u64) -> &[BigInt] {
        &self.pow_table[(k % self.m) as usize]
    }

    /// Largest coefficient of any reduced power, in absolute value.
    pub fn max_power_coeff(&self) -> BigInt {
        self.pow_table
            .iter()
            .flat_map(|v| v.iter().map(|c| c.abs()))
            .max()
            .unwrap_or_else(BigInt::one)
    }

    /// Reduces `Σ c_k x^k` with exponents taken modulo `m`.
    pub fn reduce<'a>(&self, terms: impl IntoIterator<Item = (u64, &'a BigInt)>) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.phi];
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            let k = k % self.m;
            if (k as usize) < self.phi {
                out[k as usize] += c;
            } else {
                for (o, t) in out.iter_mut().zip(self.power(k)) {
                    if !t.is_zero() {
                        *o += c * t;
                    }
                }
            }
        }
        out
    }
}

/// An exact element `num(ζ_m) / den` of `Q(ζ_m)`.
#[derive(Clone)]
pub struct CycloElement {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CycloElement {
    fn eq(&self, o: &Self) -> bool {
        self.field.m == o.field.m && self.num == o.num && self.den == o.den
    }
}

impl Eq for CycloElement {}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElement(m={}, {})", self.field.m, self)
    }
}

impl CycloElement {
    /// Builds and normalizes `num / den`.
    pub fn new(field: Arc<CycloField>, num: Vec<BigInt>, den: BigInt) -> CycloElement {
        assert_eq!(num.len(), field.phi);
        assert!(!den.is_zero());
        let mut e = CycloElement { field, num, den };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.m
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn zero(field: Arc<CycloField>) -> CycloElement {
        let n = vec![BigInt::zero(); field.phi];
        CycloElement::new(field, n, BigInt::one())
    }

    pub fn from_rational(field: Arc<CycloField>, q: &BigRational) -> CycloElement {
        let mut n = vec![BigInt::zero(); field.phi];
        n[0] = q.numer().clone();
        CycloElement::new(field, n, q.denom().clone())
    }

    pub fn from_int(field: Arc<CycloField>, v: i64) -> CycloElement {
        CycloElement::from_rational(field, &BigRational::from_integer(v.into()))
    }

    /// `ζ_m^k`.
    pub fn zeta_pow(field: Arc<CycloField>, k: i64) -> CycloElement {
        let m = field.m as i64;
        let n = field.power(k.rem_euclid(m) as u64).to_vec();
        CycloElement::new(field, n, BigInt::one())
    }

    /// `i = ζ_m^{m/4}`; requires `4 | m`.
    pub fn imag_unit(field: Arc<CycloField>) -> CycloElement {
        assert!(field.m.is_multiple_of(4), "i is not in Q(ζ_m) for this m");
        let k = (field.m / 4) as i64;
        CycloElement::zeta_pow(field, k)
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(|c| c.is_zero()) {
            Some(BigRational::new(
                self.num.first().cloned().unwrap_or_default(),
                self.den.clone(),
            ))
        } else {
            None
        }
    }

    fn same_field(&self, o: &CycloElement) {
        assert_eq!(self.field.m, o.field.m, "mixed cyclotomic fields");
    }

    pub fn add(&self, o: &CycloElement) -> CycloElement {
        self.same_field(o);
        let num = self
            .num
            .iter()
            .zip(&o.num)
            .map(|(a, b)| a * &o.den + b * &self.den)
            .collect();
        CycloElement::new(self.field.clone(), num, &self.den * &o.den)
    }

    pub fn neg(&self) -> CycloElement {
        CycloElement {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &CycloElement) -> CycloElement {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &CycloElement) -> CycloElement {
        self.same_field(o);
        let phi = self.field.phi;
        let mut prod = vec![BigInt::zero(); 2 * phi.max(1) - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let num = self.field.reduce(prod.iter().enumerate().map(|(k, c)| (k as u64, c)));
        CycloElement::new(self.field.clone(), num, &self.den * &o.den)
    }

    pub fn scale(&self, q: &BigRational) -> CycloElement {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        CycloElement::new(self.field.clone(), num, &self.den * q.denom())
    }

    pub fn pow(&self, mut e: u64) -> CycloElement {
        let mut acc = CycloElement::from_int(self.field.clone(), 1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The automorphism `ζ -> ζ^g` for `gcd(g, m) = 1`.
    pub fn galois(&self, g: u64) -> CycloElement {
        assert_eq!(gcd(g % self.field.m, self.field.m), 1, "not a unit modulo m");
        let num = self.field.reduce(
            self.num
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u64 * g) % self.field.m, c)),
        );
        CycloElement::new(self.field.clone(), num, self.den.clone())
    }

    pub fn conj(&self) -> CycloElement {
        self.galois(self.field.m - 1)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm over `Q[x]`.
    pub fn inv(&self) -> Option<CycloElement> {
        if self.is_zero() {
            return None;
        }
        let poly: Vec<BigRational> = cyclotomic_poly(self.field.m)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let a: Vec<BigRational> = self
            .num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect();
        let s = rat_poly_inverse(&a, &poly)?;
        let l = s.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> = s.iter().map(|c| (c * &l).to_integer()).collect();
        num.resize(self.field.phi, BigInt::zero());
        Some(CycloElement::new(self.field.clone(), num, l))
    }

    pub fn div(&self, o: &CycloElement) -> Option<CycloElement> {
        Some(self.mul(&o.inv()?))
    }

    /// Complex embedding with `ζ_m -> e^{2πi/m}`.
    pub fn embed(&self, prec: u32) -> ComplexBall {
        let wp = prec + 32;
        let mut acc = ComplexBall::zero(wp);
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = root_of_unity(k as i64, self.field.m, wp);
            acc = acc.add(&z.scale(&RealBall::from_int(c, wp)));
        }
        let d = RealBall::from_int(&self.den, wp);
        ComplexBall::new(
            acc.re.div(&d).expect("positive denominator").with_prec(prec),
            acc.im.div(&d).expect("positive denominator").with_prec(prec),
        )
    }
}

fn rat_trim(v: &mut Vec<BigRational>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn rat_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    rat_trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    r.truncate(db.max(1));
    rat_trim(&mut r);
    (q, r)
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rat_trim(&mut out);
    out
}

fn rat_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    rat_trim(&mut out);
    out
}

/// `s` with `s·a ≡ 1 (mod m)`, or `None` if `a` and `m` share a factor.
fn rat_poly_inverse(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    rat_trim(&mut r1);
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = rat_divrem(&r0, &r1);
        let s = rat_sub(&s0, &rat_mul(&q, &s1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let (_, s) = rat_divrem(&s0, m);
    Some(s.into_iter().map(|x| x / &c).collect())
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut parts = Vec::new();
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            });
        }
        let body = parts.join(" + ").replace("+ -", "- ");
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

/// `x = r + s·√p` (`imaginary == false`) or `x = r + s·i√p` (`imaginary == true`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadProjection {
    pub r: BigRational,
    pub s: BigRational,
    pub imaginary: bool,
}

impl QuadProjection {
    /// +1 for real `√p` content, -1 for `i√p` content.
    pub fn sign(&self) -> i8 {
        if self.imaginary {
            -1
        } else {
            1
        }
    }
}

/// The quadratic Gauss sum `Σ_t (t/p) ζ_p^t` inside `Q(ζ_m)`.
pub fn gauss_sum(field: &Arc<CycloField>, p: u64) -> CycloElement {
    let m = field.conductor();
    assert_eq!(m % p, 0);
    let step = m / p;
    let coeffs: Vec<(u64, BigInt)> = (1..p)
        .map(|t| (t * step, BigInt::from(legendre(t as i64, p).value())))
        .collect();
    let num = field.reduce(coeffs.iter().map(|(k, c)| (*k, c)));
    CycloElement::new(field.clone(), num, BigInt::one())
}

/// `√p` as an element of `Q(ζ_m)`; needs `4p | m` when `p = 3 (mod 4)`.
pub fn sqrt_p(field: &Arc<CycloField>, p: u64) -> CycloElement {
    let g = gauss_sum(field, p);
    if p % 4 == 1 {
        g
    } else {
        // the Gauss sum is i√p here
        g.mul(&CycloElement::imag_unit(field.clone()).neg())
    }
}

/// Writes `x` as `r + s√p` or `r + s·i√p` when it lies in `Q(√p, i)`'s
/// real or imaginary quadratic part; `None` otherwise.
///
/// With `τ` an automorphism fixing `i` and negating `√p`, the parts
/// `u = (x + τx)/2` and `w = (x - τx)/(2√p)` satisfy `x = u + w√p`
/// identically, so it only remains to test them for rationality.
pub fn subfield_project(x: &CycloElement, p: u64) -> Option<QuadProjection> {
    let field = x.field().clone();
    let m = field.conductor();
    if !m.is_multiple_of(4 * p) {
        return None;
    }
    let tau = tau_generator(m, p)?;
    let tx = x.galois(tau);
    let half = BigRational::new(1.into(), 2.into());
    let u = x.add(&tx).scale(&half);
    let r = u.as_rational()?;
    let sp = sqrt_p(&field, p);
    let w = x.sub(&tx).mul(&sp).scale(&BigRational::new(1.into(), (2 * p).into()));
    if let Some(s) = w.as_rational() {
        return Some(QuadProjection { r, s, imaginary: false });
    }
    let wi = w.mul(&CycloElement::imag_unit(field).neg());
    wi.as_rational().map(|s| QuadProjection { r, s, imaginary: true })
}

/// A unit `g` modulo `m` with `g = 1 (mod 4)` and `(g/p) = -1`, so that
/// `ζ -> ζ^g` fixes `i` and negates the Gauss sum.
fn tau_generator(m: u64, p: u64) -> Option<u64> {
    (1..m).find(|&g| gcd(g, m) == 1 && g % 4 == 1 && legendre(g as i64, p) == SymbolValue::MINUS)
}
