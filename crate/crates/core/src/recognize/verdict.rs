use super::form::ClosedForm;
use crate::detcore::CycloElement;
use crate::error::{Error, Result};
use crate::realball::RealBall;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Outcome of matching a computed value against a closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "kebab-case")]
pub enum Verdict {
    Confirmed,
    Refuted,
    Undecided(String),
    /// A ball containing zero, matched against a zero claim.
    ConsistentZero,
}

impl Verdict {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, Verdict::Confirmed)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted)
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, Verdict::Undecided(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Confirmed => f.write_str("confirmed"),
            Verdict::Refuted => f.write_str("refuted"),
            Verdict::Undecided(r) => write!(f, "undecided ({r})"),
            Verdict::ConsistentZero => f.write_str("consistent-zero"),
        }
    }
}

/// Relative agreement (in bits) a ball must reach before a nonzero match
/// is confirmed.
pub const MATCH_TOLERANCE_BITS: i64 = 40;

/// Precision schedule: start, doubling up to a cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionLadder {
    pub start: u32,
    pub cap: u32,
}

impl Default for PrecisionLadder {
    fn default() -> Self {
        PrecisionLadder { start: 64, cap: 4096 }
    }
}

impl PrecisionLadder {
    pub fn new(start: u32, cap: u32) -> Result<PrecisionLadder> {
        if start < 32 || cap < start {
            return Err(Error::Param(format!(
                "precision ladder needs 32 <= start <= cap, got {start}..{cap}"
            )));
        }
        Ok(PrecisionLadder { start, cap })
    }

    pub fn steps(&self) -> impl Iterator<Item = u32> {
        let cap = self.cap;
        std::iter::successors(Some(self.start), move |&p| (p < cap).then(|| (2 * p).min(cap)))
    }
}

fn tight(x: &RealBall, v: &RealBall) -> bool {
    // rad(x) + rad(v) <= 2^-40 |v|
    let r = x.rad().add(v.rad());
    let lim = v.mig().mul_2exp(-MATCH_TOLERANCE_BITS);
    r <= lim
}

/// Decides a ball against a form.
pub fn match_ball(x: &RealBall, form: &ClosedForm) -> Verdict {
    if form.is_zero() {
        return if x.contains_zero() {
            Verdict::ConsistentZero
        } else {
            Verdict::Refuted
        };
    }
    let v = form.to_ball(x.prec() + 32);
    let candidates: Vec<RealBall> = if form.is_ambiguous() {
        vec![v.clone(), v.neg()]
    } else {
        vec![v.clone()]
    };
    let hits: Vec<&RealBall> = candidates.iter().filter(|c| x.overlaps(c)).collect();
    match hits.as_slice() {
        [] => Verdict::Refuted,
        [c] if !x.contains_zero() && tight(x, c) => Verdict::Confirmed,
        _ => Verdict::Undecided(format!(
            "enclosure of relative accuracy {} bits does not separate the candidates",
            x.rel_accuracy_bits()
        )),
    }
}

/// Decides an exact value against a form, by exact field arithmetic.
pub fn match_exact(x: &CycloElement, form: &ClosedForm) -> Verdict {
    let Some(v) = form.to_cyclo(x.field()) else {
        // the form does not even lie in the field of x
        return Verdict::Refuted;
    };
    let ok = *x == v || (form.is_ambiguous() && *x == v.neg());
    if ok {
        Verdict::Confirmed
    } else {
        Verdict::Refuted
    }
}

/// The sign of an enclosure that excludes zero.
pub fn observed_sign(x: &RealBall) -> Option<i8> {
    x.sign().filter(|&s| s != 0).map(|s| s as i8)
}

/// The sign of a nonzero real cyclotomic element.
pub fn observed_sign_exact(x: &CycloElement) -> Option<i8> {
    if x.is_zero() {
        return None;
    }
    let mut prec = 64;
    loop {
        if let Some(s) = observed_sign(&x.embed(prec).re) {
            return Some(s);
        }
        prec *= 2;
    }
}

/// Runs `eval` along the ladder until [`match_ball`] leaves `Undecided`.
/// Zero forms stop at the first ball (a ball never proves zero).
pub fn match_with_escalation(
    eval: &mut dyn FnMut(u32) -> Result<RealBall>,
    form: &ClosedForm,
    ladder: &PrecisionLadder,
) -> Result<(Verdict, RealBall, u32)> {
    let mut last = None;
    for prec in ladder.steps() {
        let x = match eval(prec) {
            Ok(x) => x,
            Err(Error::Undecided(_)) => continue,
            Err(e) => return Err(e),
        };
        let v = match_ball(&x, form);
        if !v.is_undecided() {
            return Ok((v, x, prec));
        }
        last = Some((v, x, prec));
    }
    last.ok_or_else(|| Error::Undecided(format!("no enclosure obtained up to {} bits", ladder.cap)))
}

#[cfg(test)]
mod tests {
    use super::super::form::Sign;
    use super::*;
    use crate::detcore::{build, det_exact, MatrixSpec};
    use crate::realball::sqrt_u64;
    use crate::realball::Dyadic;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn near(v: f64, rad_pow2: i64) -> RealBall {
        let q = BigRational::from_float(v).unwrap();
        RealBall::from_rational(&q, 128).add_error(&Dyadic::pow2(rad_pow2))
    }

    #[test]
    fn ball_examples() {
        let f392 = ClosedForm::power(Sign::Plus, 6, 7, 4);
        assert!(f392.to_ball(64).contains_int(&BigInt::from(392)));
        assert_eq!(match_ball(&near(392.0, -40), &f392), Verdict::Confirmed);
        let f = ClosedForm::power(Sign::Minus, 6, 7, -1);
        assert_eq!(match_ball(&near(-10.583, -30), &f), Verdict::Refuted);
        assert_eq!(
            match_ball(&near(3e-40, -129), &ClosedForm::Zero),
            Verdict::ConsistentZero
        );
        assert_eq!(match_ball(&near(1.0, -20), &ClosedForm::Zero), Verdict::Refuted);
    }

    #[test]
    fn ball_never_confirms_zero() {
        for r in [-200, -60, -10] {
            assert_ne!(
                match_ball(&RealBall::zero(64).add_error(&Dyadic::pow2(r)), &ClosedForm::Zero),
                Verdict::Confirmed
            );
            assert_ne!(match_ball(&RealBall::zero(64), &ClosedForm::Zero), Verdict::Confirmed);
        }
    }

    #[test]
    fn ambiguous_and_loose() {
        let f = ClosedForm::power(Sign::Ambiguous, 4, 5, 1);
        let v = sqrt_u64(5, 128).mul_int(-4);
        assert_eq!(match_ball(&v, &f), Verdict::Confirmed);
        assert_eq!(observed_sign(&v), Some(-1));
        let loose = RealBall::from_i64(392, 64).add_error(&Dyadic::pow2(-4));
        assert!(match_ball(&loose, &ClosedForm::integer(392)).is_undecided());
    }

    #[test]
    fn exact_matching() {
        let d = det_exact(&build(&MatrixSpec::CotJk { p: 7 }).unwrap()).unwrap();
        let f = ClosedForm::SqrtPMultiple {
            q: BigRational::from_integer((-4).into()),
            p: 7,
        };
        assert_eq!(match_exact(&d, &f), Verdict::Confirmed);
        assert_eq!(match_exact(&d, &f.neg()), Verdict::Refuted);
        assert_eq!(
            match_exact(&d, &ClosedForm::power(Sign::Ambiguous, 4, 7, 1)),
            Verdict::Confirmed
        );
        assert_eq!(match_exact(&d, &ClosedForm::Zero), Verdict::Refuted);
        assert_eq!(observed_sign_exact(&d), Some(-1));
    }

    #[test]
    fn escalation_reaches_confirmation() {
        let mut calls = Vec::new();
        let mut eval = |prec: u32| {
            calls.push(prec);
            Ok(RealBall::from_i64(7, prec).add_error(&Dyadic::pow2(-(prec as i64) / 4)))
        };
        let ladder = PrecisionLadder::new(64, 1024).unwrap();
        let (v, _, prec) = match_with_escalation(&mut eval, &ClosedForm::integer(7), &ladder).unwrap();
        assert_eq!(v, Verdict::Confirmed);
        assert_eq!(prec, 256);
        assert_eq!(ladder.steps().collect::<Vec<_>>(), vec![64, 128, 256, 512, 1024]);
        assert!(PrecisionLadder::new(16, 64).is_err());
    }
}
