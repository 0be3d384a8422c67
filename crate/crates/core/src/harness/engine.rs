//! Evaluation of one matrix instance: ball escalation, exact cross-checks,
//! zero certification and integer-quotient certification.

use super::record::{exact_repr, Divisibility, Enclosure, Engine, ScanRow, Subject, VerificationRecord};
use crate::detcore::det_exact::conductor;
use crate::detcore::{
    build, det_ball, det_exact_with_budget, euler_phi, exact_to_ball, CycloElement, ExactBudget, MatrixSpec,
    ResidueMatrix,
};
use crate::error::{Error, Result};
use crate::ntheory::is_odd_prime;
use crate::realball::{Dyadic, RealBall};
use crate::recognize::{
    match_exact, match_with_escalation, observed_sign, observed_sign_exact, recognize_integer, structural_zero,
    ClosedForm, PrecisionLadder, Verdict,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use std::fmt;
use std::time::Instant;

/// Knobs shared by every harness entry point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarnessOptions {
    pub ladder: PrecisionLadder,
    pub exact_budget: ExactBudget,
    /// Exact mode always runs, as a cross-check, up to this modulus.
    pub exact_max_modulus: u64,
    pub jobs: usize,
    /// Zero out wall-clock fields so output is reproducible byte for byte.
    pub deterministic: bool,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions {
            ladder: PrecisionLadder::default(),
            exact_budget: ExactBudget::default(),
            exact_max_modulus: 13,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            deterministic: false,
        }
    }
}

impl HarnessOptions {
    pub(crate) fn elapsed(&self, t: Instant) -> u64 {
        if self.deterministic {
            0
        } else {
            t.elapsed().as_millis() as u64
        }
    }
}

/// Maps `f` over `items` on a pool of `opts.jobs` threads. The output keeps
/// the input order.
pub fn par_map<T, R, F>(opts: &HarnessOptions, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if opts.jobs <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

fn prime_hint(spec: &MatrixSpec) -> Option<u64> {
    let p = spec.modulus();
    is_odd_prime(p).then_some(p)
}

fn ball_eval(m: &ResidueMatrix) -> impl Fn(u32) -> Result<RealBall> + '_ {
    move |prec| det_ball(m, prec).map(|d| d.value)
}

fn try_exact(m: &ResidueMatrix, budget: &ExactBudget) -> Result<Option<CycloElement>> {
    match det_exact_with_budget(m, budget) {
        Ok(x) => Ok(Some(x)),
        Err(Error::Budget(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn exact_allowed(m: &ResidueMatrix, budget: &ExactBudget) -> bool {
    budget.allows(m.dim, euler_phi(conductor(m)))
}

/// Fails loudly when a ball misses the exact value of the same determinant.
fn cross_check(x: &RealBall, exact: &CycloElement, spec: &MatrixSpec) -> Result<()> {
    let e = exact_to_ball(exact, x.prec() + 32);
    if x.overlaps(&e) {
        Ok(())
    } else {
        Err(Error::Internal(format!(
            "{spec}: ball enclosure {x} misses the exact value {e}"
        )))
    }
}

fn fill_exact(rec: &mut VerificationRecord, x: &CycloElement, spec: &MatrixSpec) {
    rec.exact = Some(exact_repr(x, prime_hint(spec)));
    if let Some(q) = x.as_rational() {
        if q.is_integer() {
            rec.recognized = Some(q.to_integer().to_string());
        }
    }
}

/// Evaluates one instance against an optional predicted form.
///
/// Zero claims are proved by a structural certificate or by exact mode;
/// a ball alone yields at best [`Verdict::ConsistentZero`]. Nonzero claims
/// escalate along the precision ladder, and exact mode decides whenever
/// the modulus is at most `opts.exact_max_modulus`.
pub fn evaluate_claim(
    claim: &str,
    spec: &MatrixSpec,
    form: Option<&ClosedForm>,
    opts: &HarnessOptions,
) -> Result<VerificationRecord> {
    let t0 = Instant::now();
    let m = build(spec)?;
    let mut rec = VerificationRecord::new(claim, Subject::Matrix { spec: spec.clone() }, Engine::Ball);
    rec.predicted = form.cloned();
    let small = spec.modulus() <= opts.exact_max_modulus;
    let eval = ball_eval(&m);

    match form {
        Some(ClosedForm::Zero) => {
            let x = eval(opts.ladder.start)?;
            rec.enclosure = Some(Enclosure::of(&x));
            rec.precision_bits = x.prec();
            if let Some(cert) = structural_zero(&m).filter(|c| c.verify(&m)) {
                rec.engine = Engine::Structural;
                rec.verdict = Verdict::Confirmed;
                rec.certificate = Some(cert);
                rec.recognized = Some("0".into());
                if !x.contains_zero() {
                    return Err(Error::Internal(format!(
                        "{spec}: certified zero but the enclosure {x} excludes 0"
                    )));
                }
            } else if let Some(e) = exact_allowed(&m, &opts.exact_budget)
                .then(|| try_exact(&m, &opts.exact_budget))
                .transpose()?
                .flatten()
            {
                cross_check(&x, &e, spec)?;
                rec.engine = Engine::Exact;
                rec.verdict = match_exact(&e, &ClosedForm::Zero);
                rec.observed_sign = observed_sign_exact(&e);
                fill_exact(&mut rec, &e, spec);
            } else {
                let mut ev = |p: u32| eval(p);
                let (v, x, prec) = match_with_escalation(&mut ev, &ClosedForm::Zero, &opts.ladder)?;
                rec.verdict = v;
                rec.observed_sign = observed_sign(&x);
                rec.enclosure = Some(Enclosure::of(&x));
                rec.precision_bits = prec;
                if rec.verdict == Verdict::ConsistentZero {
                    rec.note = Some(format!(
                        "no certificate and exact mode over budget; |det| <= {}",
                        x.mag().to_f64()
                    ));
                }
            }
        }
        Some(f) => {
            let mut ev = |p: u32| eval(p);
            let (v, x, prec) = match_with_escalation(&mut ev, f, &opts.ladder)?;
            rec.verdict = v;
            rec.observed_sign = observed_sign(&x);
            rec.enclosure = Some(Enclosure::of(&x));
            rec.precision_bits = prec;
            if let Some(k) = f.as_integer().and(recognize_integer(&x)) {
                rec.recognized = Some(k.to_string());
            }
            if small {
                if let Some(e) = try_exact(&m, &opts.exact_budget)? {
                    cross_check(&x, &e, spec)?;
                    let ve = match_exact(&e, f);
                    let ball_decided = rec.verdict.is_confirmed() || rec.verdict.is_refuted();
                    if ball_decided && rec.verdict != ve {
                        return Err(Error::Internal(format!(
                            "{spec}: ball verdict {} contradicts exact verdict {ve}",
                            rec.verdict
                        )));
                    }
                    rec.engine = Engine::Exact;
                    rec.verdict = ve;
                    rec.observed_sign = observed_sign_exact(&e);
                    fill_exact(&mut rec, &e, spec);
                }
            }
        }
        None => {
            let mut last = None;
            for prec in opts.ladder.steps() {
                let x = eval(prec)?;
                let done = !x.contains_zero() && x.rel_accuracy_bits() >= 53;
                last = Some(x);
                if done {
                    break;
                }
            }
            let x = last.expect("ladder has at least one step");
            rec.observed_sign = observed_sign(&x);
            rec.precision_bits = x.prec();
            rec.enclosure = Some(Enclosure::of(&x));
            rec.verdict = Verdict::Undecided("no closed form to compare against".into());
            if small {
                if let Some(e) = try_exact(&m, &opts.exact_budget)? {
                    cross_check(&x, &e, spec)?;
                    rec.engine = Engine::Exact;
                    rec.observed_sign = observed_sign_exact(&e);
                    fill_exact(&mut rec, &e, spec);
                }
            }
        }
    }
    rec.runtime_ms = opts.elapsed(t0);
    Ok(rec)
}

/// `factor · form`, the number a determinant is claimed to be a multiple of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub factor: BigInt,
    pub form: ClosedForm,
}

impl Divisor {
    pub fn new(factor: impl Into<BigInt>, form: ClosedForm) -> Divisor {
        Divisor {
            factor: factor.into(),
            form,
        }
    }

    pub fn to_ball(&self, prec: u32) -> RealBall {
        self.form.to_ball(prec).mul_bigint(&self.factor)
    }

    fn to_cyclo(&self, x: &CycloElement) -> Option<CycloElement> {
        let f = self.form.to_cyclo(x.field())?;
        Some(f.scale(&BigRational::from_integer(self.factor.clone())))
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factor == BigInt::from(1) {
            write!(f, "{}", self.form)
        } else {
            write!(f, "{}·{}", self.factor, self.form)
        }
    }
}

/// Below this quotient radius a ball that contains no integer proves
/// non-integrality, and one that contains `k` is accepted as the quotient.
const QUOTIENT_RADIUS_BITS: i64 = 40;

enum BallQuotient {
    Integer(BigInt),
    NotInteger(RealBall),
    Unsettled(RealBall),
}

fn ball_quotient(x: &RealBall, d: &RealBall) -> BallQuotient {
    let Ok(q) = x.div(d) else {
        return BallQuotient::Unsettled(x.clone());
    };
    let lo = q.lower().floor_int();
    let hi = q.upper().floor_int();
    let tight = *q.rad() <= Dyadic::pow2(-QUOTIENT_RADIUS_BITS);
    if lo == hi && !q.contains_int(&lo) {
        return BallQuotient::NotInteger(q);
    }
    if tight {
        let k = q.mid().to_rational().round().to_integer();
        if q.contains_int(&k) && !k.is_zero() {
            return BallQuotient::Integer(k);
        }
    }
    BallQuotient::Unsettled(q)
}

/// Certifies `det(spec) / divisor` as an integer, or refutes it.
///
/// Exact mode is used whenever the budget allows it; a zero quotient
/// always needs an exact or structural proof. With `positive` the
/// quotient must moreover be a positive integer.
pub fn quotient_row(
    conjecture: &str,
    claim: &str,
    spec: &MatrixSpec,
    divisor: &Divisor,
    positive: bool,
    opts: &HarnessOptions,
) -> Result<ScanRow> {
    let t0 = Instant::now();
    let m = build(spec)?;
    let mut rec = VerificationRecord::new(claim, Subject::Matrix { spec: spec.clone() }, Engine::Ball);
    let eval = ball_eval(&m);
    let mut quotient = None;
    let mut quotient_exact = None;
    let divisibility;
    let judge = |k: &BigInt| {
        if positive && !k.is_positive() {
            Verdict::Refuted
        } else {
            Verdict::Confirmed
        }
    };

    let first = eval(opts.ladder.start)?;
    rec.enclosure = Some(Enclosure::of(&first));
    rec.precision_bits = first.prec();
    rec.observed_sign = observed_sign(&first);

    if let Some(cert) = structural_zero(&m).filter(|c| c.verify(&m)) {
        rec.engine = Engine::Structural;
        rec.certificate = Some(cert);
        rec.recognized = Some("0".into());
        rec.verdict = judge(&BigInt::zero());
        quotient = Some(BigInt::zero());
        divisibility = Divisibility::Divisible;
    } else if let Some(e) = exact_allowed(&m, &opts.exact_budget)
        .then(|| try_exact(&m, &opts.exact_budget))
        .transpose()?
        .flatten()
    {
        cross_check(&first, &e, spec)?;
        rec.engine = Engine::Exact;
        rec.observed_sign = observed_sign_exact(&e);
        fill_exact(&mut rec, &e, spec);
        let q = divisor
            .to_cyclo(&e)
            .and_then(|d| e.div(&d))
            .ok_or_else(|| Error::Internal(format!("{spec}: divisor {divisor} not usable in the exact field")))?;
        match q.as_rational() {
            Some(q) if q.is_integer() => {
                let k = q.to_integer();
                rec.verdict = judge(&k);
                quotient = Some(k);
                divisibility = Divisibility::Divisible;
            }
            _ => {
                rec.verdict = Verdict::Refuted;
                quotient_exact = Some(exact_repr(&q, prime_hint(spec)));
                divisibility = Divisibility::NotDivisible;
            }
        }
    } else {
        let mut state = BallQuotient::Unsettled(first.clone());
        for prec in opts.ladder.steps() {
            let x = eval(prec)?;
            rec.enclosure = Some(Enclosure::of(&x));
            rec.precision_bits = prec;
            rec.observed_sign = observed_sign(&x);
            state = ball_quotient(&x, &divisor.to_ball(prec + 32));
            if !matches!(state, BallQuotient::Unsettled(_)) {
                break;
            }
        }
        match state {
            BallQuotient::Integer(k) => {
                rec.verdict = judge(&k);
                rec.recognized = divisor
                    .form
                    .as_integer()
                    .map(|d| (&k * d * &divisor.factor).to_string());
                quotient = Some(k);
                divisibility = Divisibility::Divisible;
            }
            BallQuotient::NotInteger(q) => {
                rec.verdict = Verdict::Refuted;
                quotient_exact = Some(q.to_string());
                divisibility = Divisibility::NotDivisible;
            }
            BallQuotient::Unsettled(q) => {
                rec.verdict = Verdict::Undecided(format!(
                    "quotient enclosure {q} not settled up to {} bits",
                    opts.ladder.cap
                ));
                divisibility = Divisibility::Undecided;
            }
        }
    }
    rec.runtime_ms = opts.elapsed(t0);
    Ok(ScanRow {
        conjecture: conjecture.to_string(),
        record: rec,
        divisor: Some(divisor.to_string()),
        quotient,
        quotient_exact,
        divisibility: Some(divisibility),
    })
}
