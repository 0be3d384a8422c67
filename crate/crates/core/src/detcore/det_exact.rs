//! Exact determinants in `Q(ζ_{4·den})`.
//!
//! Every entry is scaled to an integral element of the group ring
//! `Z[x]/(x^m - 1)`. The determinant is then computed modulo primes
//! `ℓ = 1 (mod m)`: there `Φ_m` splits into linear factors, so the ring
//! `Z[ζ_m]/ℓ` is a product of copies of `F_ℓ`, one per primitive root, and
//! elimination in each copy needs no division in `Z[ζ_m]`. Interpolation
//! recovers the power-basis coefficients modulo `ℓ`, and the Chinese
//! remainder theorem lifts them once the product of primes exceeds twice
//! an a-priori coefficient bound.

use super::cyclo::{CycloElement, CycloField};
use super::matrix::{ResidueMatrix, TrigFunc};
use crate::error::{Error, Result};
use crate::ntheory::{gcd, is_prime, mul_mod, pow_mod};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Size limit for exact mode: allowed when `dim <= max_dim` or
/// `φ(m)·dim³ <= max_work`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactBudget {
    pub max_dim: usize,
    pub max_work: u64,
}

impl Default for ExactBudget {
    fn default() -> Self {
        ExactBudget {
            max_dim: 12,
            max_work: 1_000_000,
        }
    }
}

impl ExactBudget {
    pub fn allows(&self, dim: usize, phi: u64) -> bool {
        dim <= self.max_dim || phi.saturating_mul((dim as u64).pow(3)) <= self.max_work
    }
}

/// Conductor used for a matrix: always `4·den`.
pub fn conductor(m: &ResidueMatrix) -> u64 {
    4 * m.den
}

/// An entry scaled into the group ring: `scale · entry = Σ coeffs[t] x^t`.
struct Encoded {
    coeffs: Vec<i64>,
}

fn scale_factor(m: &ResidueMatrix) -> i64 {
    let s = match m.func {
        TrigFunc::Tan => 1,
        TrigFunc::Cot => m.den as i64,
        TrigFunc::Sin | TrigFunc::Cos => 2,
    };
    if m.squared {
        s * s
    } else {
        s
    }
}

fn encode_base(func: TrigFunc, r: u64, den: u64) -> Vec<i64> {
    let mm = 4 * den;
    let mut c = vec![0i64; mm as usize];
    let at = |e: i64| e.rem_euclid(mm as i64) as usize;
    let (den_i, r_i) = (den as i64, r as i64);
    match func {
        TrigFunc::Tan => {
            // tan = i(-1 + Σ_j (-1)^j z^j) with z = ζ_den^r, for odd den
            c[at(den_i)] -= 1;
            for j in 0..den_i {
                let sgn = if j % 2 == 0 { 1 } else { -1 };
                c[at(den_i + 4 * r_i * j)] += sgn;
            }
        }
        TrigFunc::Cot => {
            // den·cot = i·den + 2i Σ_j j z^j
            c[at(den_i)] += den_i;
            for j in 1..den_i {
                c[at(den_i + 4 * r_i * j)] += 2 * j;
            }
        }
        TrigFunc::Sin => {
            // 2 sin = -i(w^r - w^{-r}) with w = ζ_{2den}
            c[at(den_i + 2 * r_i)] -= 1;
            c[at(den_i - 2 * r_i)] += 1;
        }
        TrigFunc::Cos => {
            c[at(2 * r_i)] += 1;
            c[at(-2 * r_i)] += 1;
        }
    }
    c
}

fn cyclic_square(a: &[i64]) -> Vec<i64> {
    let m = a.len();
    let mut out = vec![0i128; m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in a.iter().enumerate() {
            if y != 0 {
                out[(i + j) % m] += x as i128 * y as i128;
            }
        }
    }
    out.into_iter()
        .map(|v| i64::try_from(v).expect("squared entry coefficient overflow"))
        .collect()
}

fn encode(m: &ResidueMatrix, j: usize, k: usize) -> Encoded {
    let w = m.weight(j, k);
    let mm = conductor(m) as usize;
    if w == 0 {
        return Encoded { coeffs: vec![0; mm] };
    }
    let mut c = encode_base(m.func, m.residue(j, k), m.den);
    if m.squared {
        c = cyclic_square(&c);
    }
    if w < 0 {
        c.iter_mut().for_each(|x| *x = -*x);
    }
    Encoded { coeffs: c }
}

/// The exact value of entry `(j, k)`.
pub fn entry_exact(m: &ResidueMatrix, j: usize, k: usize) -> CycloElement {
    let field = CycloField::get(conductor(m));
    let e = encode(m, j, k);
    let big: Vec<BigInt> = e.coeffs.iter().map(|&c| BigInt::from(c)).collect();
    let num = field.reduce(big.iter().enumerate().map(|(t, c)| (t as u64, c)));
    CycloElement::new(field, num, BigInt::from(scale_factor(m)))
}

fn inv_mod(a: u64, l: u64) -> u64 {
    pow_mod(a, l - 2, l)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Primes `ℓ = 1 (mod m)` below `2^62`, largest first.
fn split_primes(m: u64, count: usize) -> Vec<u64> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<u64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    let list = guard.entry(m).or_default();
    let mut k = match list.last() {
        Some(&l) => (l - 1) / m - 1,
        None => ((1u64 << 62) - 1) / m,
    };
    while list.len() < count {
        let l = k * m + 1;
        if is_prime(l) {
            list.push(l);
        }
        k -= 1;
    }
    list[..count].to_vec()
}

/// A primitive `m`-th root of unity modulo `ℓ`.
fn primitive_root_of_unity(m: u64, l: u64) -> u64 {
    let factors = prime_factors(m);
    (2..)
        .map(|a| pow_mod(a, (l - 1) / m, l))
        .find(|&w| w != 0 && factors.iter().all(|&q| pow_mod(w, m / q, l) != 1))
        .expect("ℓ = 1 (mod m) has primitive m-th roots")
}

fn det_mod(mut a: Vec<Vec<u64>>, l: u64) -> u64 {
    let n = a.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            det = (l - det) % l;
        }
        det = mul_mod(det, a[c][c], l);
        let inv = inv_mod(a[c][c], l);
        let (top, bottom) = a.split_at_mut(c + 1);
        let prow = &top[c];
        for row in bottom.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = mul_mod(row[c], inv, l);
            for k in c..n {
                let t = mul_mod(f, prow[k], l);
                row[k] = (row[k] + l - t) % l;
            }
        }
    }
    det
}

/// Inverse of the `φ × φ` Vandermonde matrix at the primitive roots.
fn vandermonde_inverse(nodes: &[u64], l: u64) -> Vec<Vec<u64>> {
    let n = nodes.len();
    let mut a: Vec<Vec<u64>> = nodes
        .iter()
        .map(|&x| {
            let mut row = Vec::with_capacity(2 * n);
            let mut pw = 1u64;
            for _ in 0..n {
                row.push(pw);
                pw = mul_mod(pw, x, l);
            }
            row.extend((0..n).map(|_| 0));
            row
        })
        .collect();
    for (i, row) in a.iter_mut().enumerate() {
        row[n + i] = 1;
    }
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != 0).expect("distinct nodes");
        a.swap(p, c);
        let inv = inv_mod(a[c][c], l);
        for v in a[c].iter_mut() {
            *v = mul_mod(*v, inv, l);
        }
        let pivot_row = a[c].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == c || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                let t = mul_mod(f, *pv, l);
                *v = (*v + l - t) % l;
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// The determinant of the encoded matrix modulo `ℓ`, as power-basis
/// coefficients of length `φ(m)`.
fn det_coeffs_mod(enc: &[Vec<Vec<(usize, i64)>>], m: u64, units: &[u64], l: u64) -> Vec<u64> {
    let w = primitive_root_of_unity(m, l);
    let mut pw = Vec::with_capacity(m as usize);
    let mut cur = 1u64;
    for _ in 0..m {
        pw.push(cur);
        cur = mul_mod(cur, w, l);
    }
    let li = l as i128;
    let values: Vec<u64> = units
        .iter()
        .map(|&u| {
            let mat: Vec<Vec<u64>> = enc
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|terms| {
                            let mut acc: i128 = 0;
                            for &(t, c) in terms {
                                let z = pw[((u * t as u64) % m) as usize] as i128;
                                acc = (acc + (c as i128).rem_euclid(li) * z) % li;
                            }
                            acc as u64
                        })
                        .collect()
                })
                .collect();
            det_mod(mat, l)
        })
        .collect();
    let nodes: Vec<u64> = units.iter().map(|&u| pw[u as usize]).collect();
    let vinv = vandermonde_inverse(&nodes, l);
    vinv.iter()
        .map(|row| {
            row.iter()
                .zip(&values)
                .fold(0u64, |acc, (a, b)| (acc + mul_mod(*a, *b, l)) % l)
        })
        .collect()
}

/// Exact determinant with the default budget.
pub fn det_exact(m: &ResidueMatrix) -> Result<CycloElement> {
    det_exact_with_budget(m, &ExactBudget::default())
}

pub fn det_exact_with_budget(m: &ResidueMatrix, budget: &ExactBudget) -> Result<CycloElement> {
    let cond = conductor(m);
    let field: Arc<CycloField> = CycloField::get(cond);
    let phi = field.degree() as u64;
    if !budget.allows(m.dim, phi) {
        return Err(Error::Budget(format!(
            "{}: dim {} with φ({cond}) = {phi} exceeds the exact-mode budget",
            m.spec, m.dim
        )));
    }
    if m.dim == 0 {
        return Ok(CycloElement::from_int(field, 1));
    }
    let mut enc = Vec::with_capacity(m.dim);
    let mut bound = BigInt::one();
    for j in 0..m.dim {
        let mut row = Vec::with_capacity(m.dim);
        let mut row_norm = 0i128;
        for k in 0..m.dim {
            let e = encode(m, j, k);
            let sparse: Vec<(usize, i64)> = e
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(t, &c)| (t, c))
                .collect();
            row_norm += sparse.iter().map(|(_, c)| c.unsigned_abs() as i128).sum::<i128>();
            row.push(sparse);
        }
        bound *= BigInt::from(row_norm);
        enc.push(row);
    }
    // coefficients of the reduced determinant are at most ||D̃||₁ · max |x^k mod Φ|
    let bound: BigInt = bound * field.max_power_coeff();
    let target: BigInt = bound * 2 + 1;
    let units: Vec<u64> = (1..cond).filter(|&u| gcd(u, cond) == 1).collect();

    let mut modulus = BigInt::one();
    let mut coeffs = vec![BigInt::zero(); phi as usize];
    let mut n_primes = 0;
    while modulus <= target {
        n_primes += 1;
        let l = *split_primes(cond, n_primes).last().unwrap();
        let res = det_coeffs_mod(&enc, cond, &units, l);
        let lb = BigInt::from(l);
        // CRT: x = c (mod M), x = r (mod ℓ)
        let minv = BigInt::from(inv_mod((&modulus % &lb).to_u64().unwrap(), l));
        for (c, r) in coeffs.iter_mut().zip(res) {
            let diff = (BigInt::from(r) - (&*c % &lb)).mod_floor(&lb);
            let t = (diff * &minv).mod_floor(&lb);
            *c += &modulus * t;
        }
        modulus *= lb;
    }
    let half = &modulus / 2;
    for c in coeffs.iter_mut() {
        if *c > half {
            *c -= &modulus;
        }
    }
    let den = num_traits::pow(BigInt::from(scale_factor(m)), m.dim);
    let d = CycloElement::new(field, coeffs, den);
    if !d.is_real() {
        return Err(Error::Internal(format!(
            "{}: exact determinant {d} is not real",
            m.spec
        )));
    }
    Ok(d)
}

/// An element's real part as a ball (the imaginary part is checked to be 0 by the caller).
pub fn exact_to_ball(x: &CycloElement, prec: u32) -> crate::realball::RealBall {
    let e = x.embed(prec);
    debug_assert!(e.im.contains_zero());
    e.re
}
