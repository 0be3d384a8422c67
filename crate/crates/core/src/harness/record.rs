use crate::detcore::{subfield_project, CycloElement, MatrixSpec};
use crate::realball::RealBall;
use crate::recognize::{ClosedForm, Verdict, ZeroCertificate};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Decimal rendering of a ball, kept as strings so records diff cleanly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enclosure {
    pub mid: String,
    pub rad: String,
}

impl Enclosure {
    pub fn of(x: &RealBall) -> Enclosure {
        Enclosure {
            mid: x.mid_decimal(),
            rad: x.rad_decimal(),
        }
    }
}

/// What a record is about: a determinant or a product identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "subject", rename_all = "kebab-case")]
pub enum Subject {
    Matrix { spec: MatrixSpec },
    Identity { id: String, p: u64, a: i64, b: Option<i64> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Ball,
    Exact,
    Structural,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    /// The claim id, such as `"1.1"` for a theorem or `"5.11"` for a conjecture part.
    pub claim: String,
    pub subject: Subject,
    pub predicted: Option<ClosedForm>,
    /// Imaginary part of the prediction, for complex-valued identities.
    #[serde(default)]
    pub predicted_im: Option<ClosedForm>,
    pub enclosure: Option<Enclosure>,
    /// Imaginary part, for complex-valued identities.
    pub enclosure_im: Option<Enclosure>,
    pub exact: Option<String>,
    pub recognized: Option<String>,
    pub verdict: Verdict,
    pub observed_sign: Option<i8>,
    pub certificate: Option<ZeroCertificate>,
    pub engine: Engine,
    pub precision_bits: u32,
    pub runtime_ms: u64,
    pub note: Option<String>,
    /// Set for instances kept out of sweep totals and reported separately.
    #[serde(default)]
    pub excluded: bool,
}

impl VerificationRecord {
    pub fn new(claim: &str, subject: Subject, engine: Engine) -> VerificationRecord {
        VerificationRecord {
            claim: claim.to_string(),
            subject,
            predicted: None,
            predicted_im: None,
            enclosure: None,
            enclosure_im: None,
            exact: None,
            recognized: None,
            verdict: Verdict::Undecided("not evaluated".into()),
            observed_sign: None,
            certificate: None,
            engine,
            precision_bits: 0,
            runtime_ms: 0,
            note: None,
            excluded: false,
        }
    }

    pub fn spec(&self) -> Option<&MatrixSpec> {
        match &self.subject {
            Subject::Matrix { spec } => Some(spec),
            Subject::Identity { .. } => None,
        }
    }

    /// A short label for tables.
    pub fn subject_label(&self) -> String {
        match &self.subject {
            Subject::Matrix { spec } => spec.to_string(),
            Subject::Identity { id, p, a, b } => match b {
                Some(b) => format!("identity {id} (p={p}, a={a}, b={b})"),
                None => format!("identity {id} (p={p}, a={a})"),
            },
        }
    }
}

/// Human-readable exact value: `r + s√p` when it lies in a quadratic
/// subfield for `p`, the power-basis form otherwise.
pub fn exact_repr(x: &CycloElement, p: Option<u64>) -> String {
    if let Some(q) = x.as_rational() {
        return q.to_string();
    }
    if let Some(p) = p {
        if let Some(pr) = subfield_project(x, p) {
            let unit = if pr.imaginary { "i√" } else { "√" };
            return if pr.r.is_zero() {
                format!("{}{unit}{p}", pr.s)
            } else {
                format!("{} + ({}){unit}{p}", pr.r, pr.s)
            };
        }
    }
    x.to_string()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Exact,
    Ball,
    Structural,
}

/// One term of an integer sequence computed from determinants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub n: u64,
    pub value: Option<BigInt>,
    pub certified: bool,
    pub source: Source,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Divisibility {
    Divisible,
    NotDivisible,
    Undecided,
}

/// One parameter tuple of a conjecture scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub conjecture: String,
    pub record: VerificationRecord,
    /// Rendering of the divisor the determinant is divided by.
    pub divisor: Option<String>,
    pub quotient: Option<BigInt>,
    /// Rendering of a non-integral quotient that was identified exactly.
    pub quotient_exact: Option<String>,
    pub divisibility: Option<Divisibility>,
}
