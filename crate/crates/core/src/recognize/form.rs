use crate::detcore::{sqrt_p, CycloElement, CycloField, MatrixSpec};
use crate::error::{Error, Result};
use crate::ntheory::{inv_mod, jacobi, legendre, modp, sqrt_mod, SymbolValue};
use crate::quadfield::{unit_power_signed, QuadInvariants, UnitPair};
use crate::realball::{sqrt_u64, RealBall};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Sign slot of a [`ClosedForm::Power`] value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
    /// Either sign is accepted.
    Ambiguous,
}

impl Sign {
    pub fn from_symbol(s: SymbolValue) -> Sign {
        if s.value() < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> Option<i8> {
        match self {
            Sign::Plus => Some(1),
            Sign::Minus => Some(-1),
            Sign::Ambiguous => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Ambiguous => Sign::Ambiguous,
        }
    }
}

/// A predicted determinant value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum ClosedForm {
    Zero,
    /// `sign · 2^(alpha_half/2) · base^(beta_half/2)`.
    Power {
        sign: Sign,
        alpha_half: i64,
        base: u64,
        beta_half: i64,
    },
    /// `r + s√p`.
    QuadSurd {
        r: BigRational,
        s: BigRational,
        p: u64,
    },
    Rational {
        q: BigRational,
    },
    /// `q√p`.
    SqrtPMultiple {
        q: BigRational,
        p: u64,
    },
}

impl ClosedForm {
    pub fn power(sign: Sign, alpha_half: i64, base: u64, beta_half: i64) -> ClosedForm {
        ClosedForm::Power {
            sign,
            alpha_half,
            base,
            beta_half,
        }
    }

    pub fn integer(v: impl Into<BigInt>) -> ClosedForm {
        ClosedForm::Rational {
            q: BigRational::from_integer(v.into()),
        }
    }

    /// `sign · p^(beta_half/2) · (u + v√p)/2` as `r + s√p`, for `beta_half >= 0`.
    pub fn unit_multiple(sign: i64, p: u64, beta_half: i64, unit: &UnitPair) -> ClosedForm {
        assert!(beta_half >= 0);
        let scale = BigRational::new(
            BigInt::from(sign) * num_traits::pow(BigInt::from(p), (beta_half / 2) as usize),
            BigInt::from(2),
        );
        let (r, s) = if beta_half % 2 == 1 {
            // √p (u + v√p) = v p + u √p
            (&unit.v * BigInt::from(p), unit.u.clone())
        } else {
            (unit.u.clone(), unit.v.clone())
        };
        ClosedForm::QuadSurd {
            r: &scale * BigRational::from_integer(r),
            s: &scale * BigRational::from_integer(s),
            p,
        }
    }

    /// The value as an integer, when the form is visibly integral.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            ClosedForm::Zero => Some(BigInt::from(0)),
            ClosedForm::Rational { q } if q.is_integer() => Some(q.to_integer()),
            ClosedForm::Power {
                sign: sign @ (Sign::Plus | Sign::Minus),
                alpha_half,
                base,
                beta_half,
            } if *alpha_half >= 0 && alpha_half % 2 == 0 && *beta_half >= 0 && beta_half % 2 == 0 => {
                let v = num_traits::pow(BigInt::from(2), (alpha_half / 2) as usize)
                    * num_traits::pow(BigInt::from(*base), (beta_half / 2) as usize);
                Some(if *sign == Sign::Minus { -v } else { v })
            }
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ClosedForm::Zero)
    }

    pub fn is_ambiguous(&self) -> bool {
        matches!(
            self,
            ClosedForm::Power {
                sign: Sign::Ambiguous,
                ..
            }
        )
    }

    /// The value with the sign slot forced to `+` for ambiguous forms.
    pub fn to_ball(&self, prec: u32) -> RealBall {
        let w = prec + 16;
        let v = match self {
            ClosedForm::Zero => RealBall::zero(w),
            ClosedForm::Power {
                sign,
                alpha_half,
                base,
                beta_half,
            } => {
                let two = half_power(2, *alpha_half, w);
                let b = half_power(*base, *beta_half, w);
                let v = two.mul(&b);
                if *sign == Sign::Minus {
                    v.neg()
                } else {
                    v
                }
            }
            ClosedForm::QuadSurd { r, s, p } => {
                RealBall::from_rational(r, w).add(&RealBall::from_rational(s, w).mul(&sqrt_u64(*p, w)))
            }
            ClosedForm::Rational { q } => RealBall::from_rational(q, w),
            ClosedForm::SqrtPMultiple { q, p } => RealBall::from_rational(q, w).mul(&sqrt_u64(*p, w)),
        };
        v.with_prec(prec)
    }

    /// The value inside `Q(ζ_m)`, or `None` when it does not lie in that
    /// field. Ambiguous signs are taken as `+`.
    pub fn to_cyclo(&self, field: &Arc<CycloField>) -> Option<CycloElement> {
        let f = field.clone();
        match self {
            ClosedForm::Zero => Some(CycloElement::zero(f)),
            ClosedForm::Rational { q } => Some(CycloElement::from_rational(f, q)),
            ClosedForm::QuadSurd { r, s, p } => {
                let root = sqrt_in_field(field, *p)?;
                Some(CycloElement::from_rational(f, r).add(&root.scale(s)))
            }
            ClosedForm::SqrtPMultiple { q, p } => Some(sqrt_in_field(field, *p)?.scale(q)),
            ClosedForm::Power {
                sign,
                alpha_half,
                base,
                beta_half,
            } => {
                let two = half_power_cyclo(field, 2, *alpha_half)?;
                let b = half_power_cyclo(field, *base, *beta_half)?;
                let v = two.mul(&b);
                Some(if *sign == Sign::Minus { v.neg() } else { v })
            }
        }
    }

    /// The form with every sign flipped.
    pub fn neg(&self) -> ClosedForm {
        match self.clone() {
            ClosedForm::Zero => ClosedForm::Zero,
            ClosedForm::Power {
                sign,
                alpha_half,
                base,
                beta_half,
            } => ClosedForm::power(sign.flip(), alpha_half, base, beta_half),
            ClosedForm::QuadSurd { r, s, p } => ClosedForm::QuadSurd { r: -r, s: -s, p },
            ClosedForm::Rational { q } => ClosedForm::Rational { q: -q },
            ClosedForm::SqrtPMultiple { q, p } => ClosedForm::SqrtPMultiple { q: -q, p },
        }
    }
}

fn half_power(base: u64, e: i64, prec: u32) -> RealBall {
    let whole = RealBall::from_i64(base as i64, prec)
        .powi(e.div_euclid(2))
        .expect("base is nonzero");
    if e.rem_euclid(2) == 1 {
        whole.mul(&sqrt_u64(base, prec))
    } else {
        whole
    }
}

fn half_power_cyclo(field: &Arc<CycloField>, base: u64, e: i64) -> Option<CycloElement> {
    let b = BigRational::from_integer(base.into());
    let k = e.div_euclid(2);
    let whole = if k >= 0 {
        num_traits::pow(b, k as usize)
    } else {
        num_traits::pow(b.recip(), (-k) as usize)
    };
    let w = CycloElement::from_rational(field.clone(), &whole);
    if e.rem_euclid(2) == 0 {
        return Some(w);
    }
    Some(w.mul(&sqrt_in_field(field, base)?))
}

/// `√n` inside `Q(ζ_m)`, if it lies there.
fn sqrt_in_field(field: &Arc<CycloField>, n: u64) -> Option<CycloElement> {
    let m = field.conductor();
    let mut rest = n;
    let mut outside = BigInt::one();
    let mut acc = CycloElement::from_int(field.clone(), 1);
    let mut q = 2;
    while rest > 1 {
        if q * q > rest {
            q = rest;
        }
        let mut e = 0;
        while rest.is_multiple_of(q) {
            rest /= q;
            e += 1;
        }
        if e > 0 {
            outside *= num_traits::pow(BigInt::from(q), e / 2);
            if e % 2 == 1 {
                let root = if q == 2 {
                    if !m.is_multiple_of(8) {
                        return None;
                    }
                    // ζ_8 + ζ_8^{-1}
                    let z = CycloElement::zeta_pow(field.clone(), (m / 8) as i64);
                    z.add(&z.conj())
                } else {
                    if !m.is_multiple_of(q) || (q % 4 == 3 && !m.is_multiple_of(4)) {
                        return None;
                    }
                    sqrt_p(field, q)
                };
                acc = acc.mul(&root);
            }
        }
        q += 1;
    }
    Some(acc.scale(&BigRational::from_integer(outside)))
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedForm::Zero => f.write_str("0"),
            ClosedForm::Power {
                sign,
                alpha_half,
                base,
                beta_half,
            } => {
                let s = match sign {
                    Sign::Plus => "",
                    Sign::Minus => "-",
                    Sign::Ambiguous => "±",
                };
                write!(f, "{s}{}·{}", exp_str(2, *alpha_half), exp_str(*base, *beta_half))
            }
            ClosedForm::QuadSurd { r, s, p } => write!(f, "{r} + ({s})√{p}"),
            ClosedForm::Rational { q } => write!(f, "{q}"),
            ClosedForm::SqrtPMultiple { q, p } => write!(f, "({q})√{p}"),
        }
    }
}

fn exp_str(base: u64, half: i64) -> String {
    if half % 2 == 0 {
        format!("{base}^{}", half / 2)
    } else {
        format!("{base}^({half}/2)")
    }
}

/// The theorem-predicted value of a family instance, or `None` for
/// families that no theorem covers. `inv` must belong to the family's
/// prime when the prediction needs quadratic-field invariants.
pub fn predict(spec: &MatrixSpec, inv: Option<&QuadInvariants>) -> Result<Option<ClosedForm>> {
    let need = |p: u64| -> Result<&QuadInvariants> {
        match inv {
            Some(i) if i.p == p => Ok(i),
            Some(i) => Err(Error::Param(format!(
                "invariants are for p = {}, the family needs p = {p}",
                i.p
            ))),
            None => Err(Error::Param(format!("prediction for p = {p} needs its invariants"))),
        }
    };
    let form = match *spec {
        MatrixSpec::TanQuad { p, a, b, delta } => {
            let pi = p as i64;
            let ab = legendre(a * b, p);
            let half1 = pi - 1;
            match (p % 4, delta) {
                (1, 0) => ClosedForm::Zero,
                (3, 1) => ClosedForm::Zero,
                (3, _) => {
                    if ab == SymbolValue::PLUS {
                        ClosedForm::power(Sign::Plus, half1, p, (pi + 1) / 2)
                    } else {
                        ClosedForm::power(Sign::Plus, 0, p, (pi + 1) / 2)
                    }
                }
                _ => {
                    if ab == SymbolValue::MINUS {
                        ClosedForm::power(Sign::Ambiguous, half1, p, (pi - 3) / 2)
                    } else {
                        let i = need(p)?;
                        quad_unit_form(p, a, b, i)?
                    }
                }
            }
        }
        MatrixSpec::TanLin { n, a, b, delta } => {
            if delta == 0 {
                ClosedForm::Zero
            } else {
                let s = jacobi(-(modp(a, n) as i64) * modp(b, n) as i64, n)?;
                ClosedForm::power(Sign::from_symbol(s), 0, n, 2 * (n as i64 - 2))
            }
        }
        MatrixSpec::CotQuad { p, a, b } => {
            if p <= 3 || legendre(-a * b, p) != SymbolValue::MINUS {
                return Ok(None);
            }
            let pi = p as i64;
            if p % 4 == 1 {
                ClosedForm::power(Sign::Ambiguous, pi - 1, p, -1)
            } else {
                let h = need(p)?
                    .h_minus
                    .ok_or_else(|| Error::Internal(format!("missing h(-{p})")))?;
                let mordell = if h.div_ceil(2) % 2 == 0 { 1 } else { -1 };
                let s = mordell * legendre(a, p).value();
                ClosedForm::power(Sign::from_symbol(SymbolValue::from_sign(s)), pi - 1, p, -1)
            }
        }
        _ => return Ok(None),
    };
    Ok(Some(form))
}

/// `(2c/p) p^((p-3)/4) ε^((a/p)(2-(2/p))h)` with `b = a c² (mod p)`, as `r + s√p`.
fn quad_unit_form(p: u64, a: i64, b: i64, inv: &QuadInvariants) -> Result<ClosedForm> {
    let (Some(h), Some(eps)) = (inv.h_plus, inv.eps.as_ref()) else {
        return Err(Error::Internal(format!("missing real-field invariants for p = {p}")));
    };
    let a_inv = inv_mod(modp(a, p), p).ok_or_else(|| Error::Param(format!("{p} divides a")))?;
    let ratio = (modp(b, p) as u128 * a_inv as u128 % p as u128) as i64;
    let c = sqrt_mod(ratio, p)?.ok_or_else(|| Error::Param(format!("b/a is not a square modulo {p}")))?;
    let sign = legendre(2 * c as i64, p).value();
    let e = legendre(a, p).value() * (2 - legendre(2, p).value()) * h as i64;
    let unit = unit_power_signed(eps, p, e);
    Ok(ClosedForm::unit_multiple(sign, p, (p as i64 - 3) / 2, &unit))
}

/// True when the ball is consistent with the form's absolute value.
pub fn magnitude_matches(x: &RealBall, form: &ClosedForm) -> bool {
    let v = form.to_ball(x.prec() + 32);
    x.abs().overlaps(&v.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detcore::{build, det_exact};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn inv(p: u64) -> QuadInvariants {
        QuadInvariants::compute(p).unwrap()
    }

    #[test]
    fn predictions() {
        let f = predict(
            &MatrixSpec::TanQuad {
                p: 7,
                a: 1,
                b: 1,
                delta: 0,
            },
            None,
        )
        .unwrap()
        .unwrap();
        assert!(f.to_ball(64).contains_int(&BigInt::from(392)));
        let f = predict(
            &MatrixSpec::TanQuad {
                p: 13,
                a: 1,
                b: 1,
                delta: 0,
            },
            None,
        )
        .unwrap();
        assert_eq!(f, Some(ClosedForm::Zero));
        let f = predict(&MatrixSpec::CotQuad { p: 7, a: 1, b: 1 }, Some(&inv(7)))
            .unwrap()
            .unwrap();
        let want = sqrt_u64(7, 128).inv().unwrap().mul_int(-8);
        assert!(f.to_ball(128).overlaps(&want));
        let f = predict(
            &MatrixSpec::TanQuad {
                p: 5,
                a: 1,
                b: 4,
                delta: 1,
            },
            Some(&inv(5)),
        )
        .unwrap()
        .unwrap();
        assert_eq!(
            f,
            ClosedForm::QuadSurd {
                r: q(5, 1),
                s: q(2, 1),
                p: 5
            }
        );
        assert_eq!(predict(&MatrixSpec::CotJk { p: 7 }, None).unwrap(), None);
        assert!(predict(
            &MatrixSpec::TanQuad {
                p: 13,
                a: 1,
                b: 4,
                delta: 1
            },
            None
        )
        .is_err());
    }

    #[test]
    fn prediction_is_residue_invariant() {
        for p in [5u64, 7, 11, 13] {
            let i = inv(p);
            let pi = p as i64;
            for (a, b) in [(1, 1), (1, 2), (2, 3), (3, pi - 1)] {
                for delta in [0, 1] {
                    let s1 = MatrixSpec::TanQuad { p, a, b, delta };
                    let s2 = MatrixSpec::TanQuad {
                        p,
                        a: a + pi,
                        b: b - pi,
                        delta,
                    };
                    assert_eq!(predict(&s1, Some(&i)).unwrap(), predict(&s2, Some(&i)).unwrap());
                }
                let c1 = MatrixSpec::CotQuad { p, a, b };
                let c2 = MatrixSpec::CotQuad {
                    p,
                    a: a + pi,
                    b: b - pi,
                };
                assert_eq!(predict(&c1, Some(&i)).unwrap(), predict(&c2, Some(&i)).unwrap());
            }
        }
    }

    #[test]
    fn forms_embed_consistently() {
        let field = CycloField::get(4 * 7);
        let forms = [
            ClosedForm::power(Sign::Minus, 6, 7, -1),
            ClosedForm::power(Sign::Plus, 0, 7, 3),
            ClosedForm::QuadSurd {
                r: q(1, 2),
                s: q(-3, 1),
                p: 7,
            },
            ClosedForm::SqrtPMultiple { q: q(5, 3), p: 7 },
            ClosedForm::Rational { q: q(-9, 4) },
        ];
        for f in forms {
            let e = f.to_cyclo(&field).unwrap().embed(128);
            assert!(e.im.contains_zero());
            assert!(e.re.overlaps(&f.to_ball(128)), "{f}");
        }
        // √2 and √3 are not in Q(ζ_28)
        assert!(ClosedForm::power(Sign::Plus, 1, 1, 0).to_cyclo(&field).is_none());
        assert!(ClosedForm::SqrtPMultiple { q: q(1, 1), p: 3 }
            .to_cyclo(&field)
            .is_none());
        let f8 = CycloField::get(24);
        let e = ClosedForm::power(Sign::Plus, 1, 3, 1).to_cyclo(&f8).unwrap();
        assert!(e.embed(96).re.overlaps(&sqrt_u64(6, 96)));
    }

    #[test]
    fn exact_theorem_values_equal_forms() {
        let spec = MatrixSpec::TanQuad {
            p: 7,
            a: 1,
            b: 3,
            delta: 0,
        };
        let d = det_exact(&build(&spec).unwrap()).unwrap();
        let f = predict(&spec, None).unwrap().unwrap();
        assert_eq!(d, f.to_cyclo(d.field()).unwrap());
        assert_eq!(f.as_integer(), Some(BigInt::from(49)));
        assert_eq!(
            ClosedForm::power(Sign::Minus, 4, 3, 2).as_integer(),
            Some(BigInt::from(-12))
        );
        assert_eq!(ClosedForm::power(Sign::Plus, 1, 3, 2).as_integer(), None);
    }
}
