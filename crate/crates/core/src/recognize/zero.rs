//! Structural zero certificates.
//!
//! A certificate is a pair of index permutations `σ`, `τ` induced by
//! multipliers `j -> ±c·j (mod N)`, possibly combined with a transpose,
//! such that `A[σj][τk] = -A[j][k]` (or `-A[k][j]`). Taking determinants
//! gives `sgn σ · sgn τ · det A = (-1)^dim · det A`, so `det A = 0` as soon
//! as `sgn σ · sgn τ != (-1)^dim`. All comparisons are made on canonical
//! residues, never on numbers.

use crate::detcore::ResidueMatrix;
use crate::ntheory::{gcd, modp, permutation_sign};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ZeroKind {
    /// Rows and columns mapped by `j -> q·j`, entries negated.
    NegationSymmetry { q: u64 },
    /// The matrix, after index maps, equals minus its transpose.
    TransposeAntisymmetry,
    /// Full residue system with `j -> -j` on rows and columns.
    FullRangeAntisymmetry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroCertificate {
    pub kind: ZeroKind,
    pub row_mult: u64,
    pub col_mult: u64,
    pub transposed: bool,
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
}

impl ZeroCertificate {
    /// Re-checks the certificate against the matrix by exact residue comparison.
    pub fn verify(&self, m: &ResidueMatrix) -> bool {
        let n = m.dim;
        if self.row_perm.len() != n || self.col_perm.len() != n || n == 0 {
            return false;
        }
        if !is_perm(&self.row_perm) || !is_perm(&self.col_perm) {
            return false;
        }
        let parity = permutation_sign(&self.row_perm) * permutation_sign(&self.col_perm);
        let target: i8 = if n.is_multiple_of(2) { 1 } else { -1 };
        parity != target && relation_holds(m, &self.row_perm, &self.col_perm, self.transposed)
    }
}

fn is_perm(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

fn relation_holds(m: &ResidueMatrix, sigma: &[usize], tau: &[usize], transposed: bool) -> bool {
    (0..m.dim).all(|j| {
        (0..m.dim).all(|k| {
            let lhs = m.canonical(sigma[j], tau[k]);
            let rhs = if transposed {
                m.canonical(k, j)
            } else {
                m.canonical(j, k)
            };
            lhs == rhs.neg()
        })
    })
}

/// The index permutation induced by `j -> c·j`, folded by sign when the
/// labels form a half system. `None` if it does not permute the labels.
fn multiplier_perm(labels: &[i64], modulus: u64, c: u64) -> Option<Vec<usize>> {
    let pos = |r: u64| labels.iter().position(|&l| modp(l, modulus) == r);
    let perm: Option<Vec<usize>> = labels
        .iter()
        .map(|&l| {
            let r = modp(l, modulus) * c % modulus;
            pos(r).or_else(|| pos((modulus - r) % modulus))
        })
        .collect();
    perm.filter(|p| is_perm(p))
}

/// Searches for a structural certificate forcing `det = 0`.
pub fn structural_zero(m: &ResidueMatrix) -> Option<ZeroCertificate> {
    let n = m.dim;
    if n == 0 {
        return None;
    }
    let modulus = m.spec.modulus();
    let labels = &m.labels;
    let target: i8 = if n.is_multiple_of(2) { 1 } else { -1 };
    let try_pair = |cr: u64, cc: u64, transposed: bool| -> Option<ZeroCertificate> {
        let sigma = multiplier_perm(labels, modulus, cr)?;
        let tau = multiplier_perm(labels, modulus, cc)?;
        if permutation_sign(&sigma) * permutation_sign(&tau) == target {
            return None;
        }
        if !relation_holds(m, &sigma, &tau, transposed) {
            return None;
        }
        let kind = if transposed {
            ZeroKind::TransposeAntisymmetry
        } else if cr == modulus - 1 && cc == cr && m.spec.is_full_range_linear() {
            ZeroKind::FullRangeAntisymmetry
        } else {
            ZeroKind::NegationSymmetry { q: cr }
        };
        Some(ZeroCertificate {
            kind,
            row_mult: cr,
            col_mult: cc,
            transposed,
            row_perm: sigma,
            col_perm: tau,
        })
    };
    let units: Vec<u64> = (1..modulus).filter(|&c| gcd(c, modulus) == 1).collect();
    if m.spec.is_full_range_linear() {
        if let Some(c) = try_pair(modulus - 1, modulus - 1, false) {
            return Some(c);
        }
    }
    if let Some(c) = try_pair(1, 1, true) {
        return Some(c);
    }
    for &q in &units {
        if let Some(c) = try_pair(q, q, false) {
            return Some(c);
        }
    }
    for transposed in [false, true] {
        for &cr in &units {
            for &cc in &units {
                if let Some(c) = try_pair(cr, cc, transposed) {
                    return Some(c);
                }
            }
        }
    }
    None
}
