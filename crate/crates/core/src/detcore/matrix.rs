use crate::error::{param, Error, Result};
use crate::ntheory::{gcd, is_odd_prime, legendre, modp};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The matrix families whose determinants are studied.
///
/// Quadratic families take entries at `a j² + b k²`, linear ones at
/// `a j + b k`, and the `JK` families at the product `jk`. `delta` is the
/// lower index bound (0 or 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum MatrixSpec {
    TanQuad {
        p: u64,
        a: i64,
        b: i64,
        delta: u8,
    },
    TanLin {
        n: u64,
        a: i64,
        b: i64,
        delta: u8,
    },
    CotQuad {
        p: u64,
        a: i64,
        b: i64,
    },
    CotJk {
        p: u64,
    },
    /// `tan π jk/(2m+1)` for `1 <= j, k <= m`.
    TanJk {
        m: u64,
    },
    /// `tan² π jk/(2m+1)` for `1 <= j, k <= m`.
    Tan2Jk {
        m: u64,
    },
    Tan2Quad {
        p: u64,
        a: i64,
        b: i64,
        delta: u8,
    },
    /// `tan² π (j+k)/n` for `1 <= j, k <= n-1`.
    Tan2LinSum {
        n: u64,
    },
    /// `tan² π (j-k)/n` for `1 <= j, k <= n-1`.
    Tan2LinDiff {
        n: u64,
    },
    Cot2Quad {
        p: u64,
        a: i64,
        b: i64,
    },
    /// `((aj²+bk²)/p) tan π (aj²+bk²)/p` for `0 <= j, k <= (p-1)/2`.
    LegTanQuad {
        p: u64,
        a: i64,
        b: i64,
    },
    /// `((aj²+bk²)/p) cot π (aj²+bk²)/p` for `1 <= j, k <= (p-1)/2`.
    LegCotQuad {
        p: u64,
        a: i64,
        b: i64,
    },
    /// `cos π jk/n` for `delta <= j, k <= n`, or `cos 2π jk/n` for
    /// `delta <= j, k <= (n-1)/2` when `doubled`.
    CosJk {
        n: u64,
        delta: u8,
        doubled: bool,
    },
    /// `sin π jk/n` for `1 <= j, k <= n-1`, or `sin 2π jk/n` for
    /// `1 <= j, k <= (n-1)/2` when `doubled`.
    SinJk {
        n: u64,
        doubled: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrigFunc {
    Tan,
    Cot,
    Sin,
    Cos,
}

impl fmt::Display for TrigFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TrigFunc::Tan => "tan",
            TrigFunc::Cot => "cot",
            TrigFunc::Sin => "sin",
            TrigFunc::Cos => "cos",
        };
        f.write_str(s)
    }
}

impl MatrixSpec {
    /// Kebab-case family name, as used on the command line.
    pub fn family_name(&self) -> &'static str {
        match self {
            MatrixSpec::TanQuad { .. } => "tan-quad",
            MatrixSpec::TanLin { .. } => "tan-lin",
            MatrixSpec::CotQuad { .. } => "cot-quad",
            MatrixSpec::CotJk { .. } => "cot-jk",
            MatrixSpec::TanJk { .. } => "tan-jk",
            MatrixSpec::Tan2Jk { .. } => "tan2-jk",
            MatrixSpec::Tan2Quad { .. } => "tan2-quad",
            MatrixSpec::Tan2LinSum { .. } => "tan2-lin-sum",
            MatrixSpec::Tan2LinDiff { .. } => "tan2-lin-diff",
            MatrixSpec::Cot2Quad { .. } => "cot2-quad",
            MatrixSpec::LegTanQuad { .. } => "leg-tan-quad",
            MatrixSpec::LegCotQuad { .. } => "leg-cot-quad",
            MatrixSpec::CosJk { .. } => "cos-jk",
            MatrixSpec::SinJk { .. } => "sin-jk",
        }
    }

    /// The modulus `p` or `n` of the family.
    pub fn modulus(&self) -> u64 {
        match *self {
            MatrixSpec::TanQuad { p, .. }
            | MatrixSpec::CotQuad { p, .. }
            | MatrixSpec::CotJk { p }
            | MatrixSpec::Tan2Quad { p, .. }
            | MatrixSpec::Cot2Quad { p, .. }
            | MatrixSpec::LegTanQuad { p, .. }
            | MatrixSpec::LegCotQuad { p, .. } => p,
            MatrixSpec::TanLin { n, .. }
            | MatrixSpec::Tan2LinSum { n }
            | MatrixSpec::Tan2LinDiff { n }
            | MatrixSpec::CosJk { n, .. }
            | MatrixSpec::SinJk { n, .. } => n,
            MatrixSpec::TanJk { m } | MatrixSpec::Tan2Jk { m } => 2 * m + 1,
        }
    }

    /// `(a, b, delta)` where the family has them.
    pub fn coefficients(&self) -> (Option<i64>, Option<i64>, Option<u8>) {
        match *self {
            MatrixSpec::TanQuad { a, b, delta, .. }
            | MatrixSpec::TanLin { a, b, delta, .. }
            | MatrixSpec::Tan2Quad { a, b, delta, .. } => (Some(a), Some(b), Some(delta)),
            MatrixSpec::CotQuad { a, b, .. }
            | MatrixSpec::Cot2Quad { a, b, .. }
            | MatrixSpec::LegTanQuad { a, b, .. }
            | MatrixSpec::LegCotQuad { a, b, .. } => (Some(a), Some(b), None),
            MatrixSpec::CosJk { delta, .. } => (None, None, Some(delta)),
            _ => (None, None, None),
        }
    }

    /// True for the families whose row and column indices run over the
    /// full residue system `0..n` or `1..n` (used by the antisymmetry test).
    pub fn is_full_range_linear(&self) -> bool {
        matches!(self, MatrixSpec::TanLin { .. })
    }
}

impl fmt::Display for MatrixSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.family_name();
        match *self {
            MatrixSpec::TanQuad { p, a, b, delta } | MatrixSpec::Tan2Quad { p, a, b, delta } => {
                write!(f, "{name}(p={p}, a={a}, b={b}, delta={delta})")
            }
            MatrixSpec::TanLin { n, a, b, delta } => {
                write!(f, "{name}(n={n}, a={a}, b={b}, delta={delta})")
            }
            MatrixSpec::CotQuad { p, a, b }
            | MatrixSpec::Cot2Quad { p, a, b }
            | MatrixSpec::LegTanQuad { p, a, b }
            | MatrixSpec::LegCotQuad { p, a, b } => write!(f, "{name}(p={p}, a={a}, b={b})"),
            MatrixSpec::CotJk { p } => write!(f, "{name}(p={p})"),
            MatrixSpec::TanJk { m } | MatrixSpec::Tan2Jk { m } => write!(f, "{name}(n={m})"),
            MatrixSpec::Tan2LinSum { n } | MatrixSpec::Tan2LinDiff { n } => {
                write!(f, "{name}(n={n})")
            }
            MatrixSpec::CosJk { n, delta, doubled } => {
                write!(f, "{name}(n={n}, delta={delta}, doubled={doubled})")
            }
            MatrixSpec::SinJk { n, doubled } => write!(f, "{name}(n={n}, doubled={doubled})"),
        }
    }
}

/// A matrix stored as angle residues: entry `(j, k)` is
/// `weight · f(π · residue / den)`, squared when `squared` is set.
///
/// For tan and cot residues lie in `0..den`; sin and cos have period
/// `2·den` and their residues lie in `0..2·den`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueMatrix {
    pub spec: MatrixSpec,
    pub dim: usize,
    pub den: u64,
    pub func: TrigFunc,
    pub squared: bool,
    /// Index values `j` labelling the rows (equal to the column labels).
    pub labels: Vec<i64>,
    residues: Vec<u64>,
    weights: Option<Vec<i8>>,
}

/// An entry up to sign: `sign · f(π·u/den)` with `u` folded into
/// `0..=den/2` (or `0..=den/2` of the half period for sin/cos). Distinct
/// folded residues give distinct values, so two entries are equal or
/// opposite exactly when their canonical forms say so. Zero is `(0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalEntry {
    pub sign: i8,
    pub u: u64,
}

impl CanonicalEntry {
    pub const ZERO: CanonicalEntry = CanonicalEntry { sign: 0, u: 0 };

    pub fn neg(self) -> CanonicalEntry {
        CanonicalEntry {
            sign: -self.sign,
            u: self.u,
        }
    }
}

impl ResidueMatrix {
    pub fn residue(&self, j: usize, k: usize) -> u64 {
        self.residues[j * self.dim + k]
    }

    /// The Legendre weight of entry `(j, k)`, or 1 for unweighted families.
    pub fn weight(&self, j: usize, k: usize) -> i8 {
        self.weights.as_ref().map_or(1, |w| w[j * self.dim + k])
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// Period of the residues for this function.
    pub fn period(&self) -> u64 {
        match self.func {
            TrigFunc::Tan | TrigFunc::Cot => self.den,
            TrigFunc::Sin | TrigFunc::Cos => 2 * self.den,
        }
    }

    pub fn residue_rows(&self) -> Vec<Vec<u64>> {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|k| self.residue(j, k)).collect())
            .collect()
    }

    /// Canonical form of entry `(j, k)`.
    pub fn canonical(&self, j: usize, k: usize) -> CanonicalEntry {
        let w = self.weight(j, k);
        if w == 0 {
            return CanonicalEntry::ZERO;
        }
        let r = self.residue(j, k);
        let d = self.den;
        let (mut sign, u): (i8, u64) = match self.func {
            TrigFunc::Tan | TrigFunc::Cot => {
                let r = r % d;
                if 2 * r > d {
                    (-1, d - r)
                } else {
                    (1, r)
                }
            }
            TrigFunc::Sin => {
                // sin(π r/d): odd, period 2d, symmetric about d/2
                let (s, r) = if r >= d { (-1, r - d) } else { (1, r) };
                (s, if 2 * r > d { d - r } else { r })
            }
            TrigFunc::Cos => {
                // cos(π r/d): even, period 2d, antisymmetric about d/2
                let r = if r > d { 2 * d - r } else { r };
                if 2 * r > d {
                    (-1, d - r)
                } else {
                    (1, r)
                }
            }
        };
        let zero = match self.func {
            TrigFunc::Tan | TrigFunc::Sin => u == 0,
            TrigFunc::Cot | TrigFunc::Cos => 2 * u == d,
        };
        if zero {
            return CanonicalEntry::ZERO;
        }
        if self.squared {
            sign = 1;
        }
        CanonicalEntry { sign: sign * w, u }
    }
}

fn index_range(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).collect()
}

fn require_odd_prime(p: u64) -> Result<()> {
    if !is_odd_prime(p) {
        return param(format!("{p} is not an odd prime"));
    }
    Ok(())
}

fn require_unit(x: i64, n: u64, name: &str) -> Result<()> {
    if gcd(modp(x, n), n) != 1 {
        return param(format!("gcd({name}={x}, {n}) != 1"));
    }
    Ok(())
}

fn require_delta(delta: u8) -> Result<()> {
    if delta > 1 {
        return param(format!("delta must be 0 or 1, got {delta}"));
    }
    Ok(())
}

fn require_odd_modulus(n: u64) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return param(format!("modulus must be odd and > 1, got {n}"));
    }
    Ok(())
}

struct Layout {
    den: u64,
    func: TrigFunc,
    squared: bool,
    labels: Vec<i64>,
    weighted: bool,
    /// Cot families reject zero residues unless the entry is weighted to 0.
    pole_check: bool,
}

/// Builds the residue matrix of a family, checking its parameter constraints.
pub fn build(spec: &MatrixSpec) -> Result<ResidueMatrix> {
    let (layout, residue): (Layout, Box<dyn Fn(i64, i64) -> i64>) = match *spec {
        MatrixSpec::TanQuad { p, a, b, delta } | MatrixSpec::Tan2Quad { p, a, b, delta } => {
            require_odd_prime(p)?;
            require_unit(a, p, "a")?;
            require_unit(b, p, "b")?;
            require_delta(delta)?;
            let squared = matches!(spec, MatrixSpec::Tan2Quad { .. });
            (
                Layout {
                    den: p,
                    func: TrigFunc::Tan,
                    squared,
                    labels: index_range(delta as i64, (p as i64 - 1) / 2),
                    weighted: false,
                    pole_check: false,
                },
                Box::new(move |j, k| a * j * j + b * k * k),
            )
        }
        MatrixSpec::TanLin { n, a, b, delta } => {
            require_odd_modulus(n)?;
            require_unit(a, n, "a")?;
            require_unit(b, n, "b")?;
            require_delta(delta)?;
            (
                Layout {
                    den: n,
                    func: TrigFunc::Tan,
                    squared: false,
                    labels: index_range(delta as i64, n as i64 - 1),
                    weighted: false,
                    pole_check: false,
                },
                Box::new(move |j, k| a * j + b * k),
            )
        }
        MatrixSpec::CotQuad { p, a, b } | MatrixSpec::Cot2Quad { p, a, b } => {
            require_odd_prime(p)?;
            require_unit(a, p, "a")?;
            require_unit(b, p, "b")?;
            let squared = matches!(spec, MatrixSpec::Cot2Quad { .. });
            (
                Layout {
                    den: p,
                    func: TrigFunc::Cot,
                    squared,
                    labels: index_range(1, (p as i64 - 1) / 2),
                    weighted: false,
                    pole_check: true,
                },
                Box::new(move |j, k| a * j * j + b * k * k),
            )
        }
        MatrixSpec::CotJk { p } => {
            require_odd_prime(p)?;
            (
                Layout {
                    den: p,
                    func: TrigFunc::Cot,
                    squared: false,
                    labels: index_range(1, (p as i64 - 1) / 2),
                    weighted: false,
                    pole_check: true,
                },
                Box::new(|j, k| j * k),
            )
        }
        MatrixSpec::TanJk { m } | MatrixSpec::Tan2Jk { m } => {
            if m == 0 {
                return param("n must be positive");
            }
            (
                Layout {
                    den: 2 * m + 1,
                    func: TrigFunc::Tan,
                    squared: matches!(spec, MatrixSpec::Tan2Jk { .. }),
                    labels: index_range(1, m as i64),
                    weighted: false,
                    pole_check: false,
                },
                Box::new(|j, k| j * k),
            )
        }
        MatrixSpec::Tan2LinSum { n } | MatrixSpec::Tan2LinDiff { n } => {
            require_odd_modulus(n)?;
            let diff = matches!(spec, MatrixSpec::Tan2LinDiff { .. });
            (
                Layout {
                    den: n,
                    func: TrigFunc::Tan,
                    squared: true,
                    labels: index_range(1, n as i64 - 1),
                    weighted: false,
                    pole_check: false,
                },
                if diff {
                    Box::new(|j, k| j - k)
                } else {
                    Box::new(|j, k| j + k)
                },
            )
        }
        MatrixSpec::LegTanQuad { p, a, b } | MatrixSpec::LegCotQuad { p, a, b } => {
            require_odd_prime(p)?;
            require_unit(a, p, "a")?;
            require_unit(b, p, "b")?;
            let cot = matches!(spec, MatrixSpec::LegCotQuad { .. });
            (
                Layout {
                    den: p,
                    func: if cot { TrigFunc::Cot } else { TrigFunc::Tan },
                    squared: false,
                    labels: index_range(if cot { 1 } else { 0 }, (p as i64 - 1) / 2),
                    weighted: true,
                    pole_check: false,
                },
                Box::new(move |j, k| a * j * j + b * k * k),
            )
        }
        MatrixSpec::CosJk { n, delta, doubled } => {
            require_delta(delta)?;
            if n == 0 || (doubled && n % 2 == 0) {
                return param(format!("cos family needs n >= 1 (odd when doubled), got {n}"));
            }
            let hi = if doubled { (n as i64 - 1) / 2 } else { n as i64 };
            let f: Box<dyn Fn(i64, i64) -> i64> = if doubled {
                Box::new(|j, k| 2 * j * k)
            } else {
                Box::new(|j, k| j * k)
            };
            (
                Layout {
                    den: n,
                    func: TrigFunc::Cos,
                    squared: false,
                    labels: index_range(delta as i64, hi),
                    weighted: false,
                    pole_check: false,
                },
                f,
            )
        }
        MatrixSpec::SinJk { n, doubled } => {
            if n == 0 || (doubled && n % 2 == 0) || (!doubled && n < 2) {
                return param(format!("sin family needs n > 1 (odd when doubled), got {n}"));
            }
            let hi = if doubled { (n as i64 - 1) / 2 } else { n as i64 - 1 };
            let f: Box<dyn Fn(i64, i64) -> i64> = if doubled {
                Box::new(|j, k| 2 * j * k)
            } else {
                Box::new(|j, k| j * k)
            };
            (
                Layout {
                    den: n,
                    func: TrigFunc::Sin,
                    squared: false,
                    labels: index_range(1, hi),
                    weighted: false,
                    pole_check: false,
                },
                f,
            )
        }
    };

    let period = match layout.func {
        TrigFunc::Tan | TrigFunc::Cot => layout.den,
        TrigFunc::Sin | TrigFunc::Cos => 2 * layout.den,
    };
    let dim = layout.labels.len();
    let mut residues = Vec::with_capacity(dim * dim);
    let mut weights = layout.weighted.then(|| Vec::with_capacity(dim * dim));
    for &j in &layout.labels {
        for &k in &layout.labels {
            let raw = residue(j, k);
            let r = modp(raw, period);
            if layout.pole_check && r.is_multiple_of(layout.den) {
                return Err(Error::Domain(format!(
                    "{spec}: entry (j={j}, k={k}) sits on a cot pole (residue 0)"
                )));
            }
            residues.push(r);
            if let Some(w) = weights.as_mut() {
                w.push(legendre(raw, layout.den).value() as i8);
            }
        }
    }
    Ok(ResidueMatrix {
        spec: spec.clone(),
        dim,
        den: layout.den,
        func: layout.func,
        squared: layout.squared,
        labels: layout.labels,
        residues,
        weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_examples() {
        let m = build(&MatrixSpec::TanQuad {
            p: 5,
            a: 1,
            b: 1,
            delta: 1,
        })
        .unwrap();
        assert_eq!(m.residue_rows(), vec![vec![2, 0], vec![0, 3]]);
        let m = build(&MatrixSpec::CotJk { p: 7 }).unwrap();
        assert_eq!(m.residue_rows(), vec![vec![1, 2, 3], vec![2, 4, 6], vec![3, 6, 2]]);
        assert!(matches!(
            build(&MatrixSpec::CotQuad { p: 5, a: 1, b: 1 }),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn parameter_errors() {
        let bad = [
            MatrixSpec::TanQuad {
                p: 9,
                a: 1,
                b: 1,
                delta: 0,
            },
            MatrixSpec::TanQuad {
                p: 7,
                a: 7,
                b: 1,
                delta: 0,
            },
            MatrixSpec::TanLin {
                n: 9,
                a: 3,
                b: 1,
                delta: 1,
            },
            MatrixSpec::TanLin {
                n: 8,
                a: 1,
                b: 1,
                delta: 1,
            },
            MatrixSpec::TanQuad {
                p: 7,
                a: 1,
                b: 1,
                delta: 2,
            },
            MatrixSpec::CosJk {
                n: 4,
                delta: 0,
                doubled: true,
            },
        ];
        for s in bad {
            assert!(matches!(build(&s), Err(Error::Param(_))), "{s}");
        }
    }

    #[test]
    fn index_ranges() {
        let dim = |s: MatrixSpec| build(&s).unwrap().dim;
        assert_eq!(
            dim(MatrixSpec::TanQuad {
                p: 13,
                a: 1,
                b: 1,
                delta: 0
            }),
            7
        );
        assert_eq!(
            dim(MatrixSpec::TanLin {
                n: 9,
                a: 1,
                b: 2,
                delta: 1
            }),
            8
        );
        assert_eq!(dim(MatrixSpec::TanJk { m: 5 }), 5);
        assert_eq!(dim(MatrixSpec::Tan2LinSum { n: 7 }), 6);
        assert_eq!(dim(MatrixSpec::LegTanQuad { p: 7, a: 1, b: 1 }), 4);
        assert_eq!(dim(MatrixSpec::LegCotQuad { p: 7, a: 1, b: 1 }), 3);
        assert_eq!(
            dim(MatrixSpec::CosJk {
                n: 4,
                delta: 0,
                doubled: false
            }),
            5
        );
        assert_eq!(
            dim(MatrixSpec::CosJk {
                n: 7,
                delta: 1,
                doubled: true
            }),
            3
        );
        assert_eq!(dim(MatrixSpec::SinJk { n: 6, doubled: false }), 5);
    }

    #[test]
    fn legendre_weights() {
        let m = build(&MatrixSpec::LegTanQuad { p: 7, a: 1, b: 1 }).unwrap();
        assert_eq!(m.weight(0, 0), 0);
        assert_eq!(m.weight(1, 0), 1); // (1/7)
        assert_eq!(m.weight(1, 2), -1); // (5/7)
        let m = build(&MatrixSpec::LegCotQuad { p: 5, a: 1, b: 1 }).unwrap();
        assert_eq!(m.weight(0, 1), 0); // 1 + 4 = 0 mod 5, no pole raised
    }

    #[test]
    fn sin_cos_residues_use_the_double_period() {
        let m = build(&MatrixSpec::CosJk {
            n: 3,
            delta: 0,
            doubled: false,
        })
        .unwrap();
        assert_eq!(m.residue(3, 3), 3); // 9 mod 6
        let m = build(&MatrixSpec::SinJk { n: 5, doubled: true }).unwrap();
        assert_eq!(m.residue(1, 1), 8); // 2*2*2 mod 10
    }

    #[test]
    fn canonical_forms_detect_negation() {
        let m = build(&MatrixSpec::TanLin {
            n: 9,
            a: 1,
            b: -1,
            delta: 0,
        })
        .unwrap();
        for j in 0..m.dim {
            for k in 0..m.dim {
                assert_eq!(m.canonical(j, k), m.canonical(k, j).neg());
            }
        }
        let c = build(&MatrixSpec::CosJk {
            n: 4,
            delta: 0,
            doubled: false,
        })
        .unwrap();
        // cos(π·1·2/4) = 0
        assert_eq!(c.canonical(1, 2), CanonicalEntry::ZERO);
        // cos(π·3/4) = -cos(π/4)
        assert_eq!(c.canonical(1, 3), c.canonical(1, 1).neg());
    }
}
