use crate::error::{Error, Result};
use crate::harness::{Engine, ScanRow, Subject, VerificationRecord};
use crate::recognize::{Verdict, ZeroCertificate};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecimalEnclosure {
    pub mid_dec: String,
    pub rad_dec: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactField {
    pub present: bool,
    pub value_repr: Option<String>,
}

/// One line of command output and of store payloads.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    /// `verification`, `scan`, `sequence` or `a-pm`.
    pub kind: String,
    pub claim: String,
    pub family: String,
    pub params: Map<String, Value>,
    pub engine: Engine,
    pub prec_bits: u32,
    pub enclosure: Option<DecimalEnclosure>,
    pub enclosure_im: Option<DecimalEnclosure>,
    pub exact: ExactField,
    pub predicted: Option<String>,
    pub verdict: String,
    pub reason: Option<String>,
    pub observed_sign: Option<i8>,
    pub recognized: Option<String>,
    pub divisor: Option<String>,
    pub quotient: Option<String>,
    pub quotient_exact: Option<String>,
    pub certificate: Option<ZeroCertificate>,
    pub excluded: bool,
    pub note: Option<String>,
    pub runtime_ms: u64,
}

fn subject_fields(s: &Subject) -> (String, Map<String, Value>) {
    match s {
        Subject::Matrix { spec } => {
            let mut m = match serde_json::to_value(spec) {
                Ok(Value::Object(m)) => m,
                _ => Map::new(),
            };
            m.remove("family");
            (spec.family_name().to_string(), m)
        }
        Subject::Identity { id, p, a, b } => {
            let mut m = Map::new();
            m.insert("id".into(), Value::from(id.clone()));
            m.insert("p".into(), Value::from(*p));
            m.insert("a".into(), Value::from(*a));
            if let Some(b) = b {
                m.insert("b".into(), Value::from(*b));
            }
            ("identity".to_string(), m)
        }
    }
}

fn verdict_fields(r: &VerificationRecord) -> (String, Option<String>) {
    if r.predicted.is_none() && r.predicted_im.is_none() && r.claim == "compute" {
        return ("computed".into(), None);
    }
    match &r.verdict {
        Verdict::Confirmed => ("confirmed".into(), None),
        Verdict::Refuted => ("refuted".into(), None),
        Verdict::ConsistentZero => ("consistent-zero".into(), None),
        Verdict::Undecided(why) => ("undecided".into(), Some(why.clone())),
    }
}

impl OutputRecord {
    pub fn from_verification(kind: &str, r: &VerificationRecord) -> OutputRecord {
        let (family, params) = subject_fields(&r.subject);
        let (verdict, reason) = verdict_fields(r);
        let predicted = match (&r.predicted, &r.predicted_im) {
            (Some(re), Some(im)) => Some(format!("{re} + ({im})i")),
            (Some(re), None) => Some(re.to_string()),
            (None, Some(im)) => Some(format!("({im})i")),
            (None, None) => None,
        };
        let enc = |e: &Option<crate::harness::Enclosure>| {
            e.as_ref().map(|e| DecimalEnclosure {
                mid_dec: e.mid.clone(),
                rad_dec: e.rad.clone(),
            })
        };
        OutputRecord {
            kind: kind.to_string(),
            claim: r.claim.clone(),
            family,
            params,
            engine: r.engine,
            prec_bits: r.precision_bits,
            enclosure: enc(&r.enclosure),
            enclosure_im: enc(&r.enclosure_im),
            exact: ExactField {
                present: r.exact.is_some(),
                value_repr: r.exact.clone(),
            },
            predicted,
            verdict,
            reason,
            observed_sign: r.observed_sign,
            recognized: r.recognized.clone(),
            divisor: None,
            quotient: None,
            quotient_exact: None,
            certificate: r.certificate.clone(),
            excluded: r.excluded,
            note: r.note.clone(),
            runtime_ms: r.runtime_ms,
        }
    }

    pub fn from_scan(kind: &str, row: &ScanRow) -> OutputRecord {
        let mut o = OutputRecord::from_verification(kind, &row.record);
        o.divisor = row.divisor.clone();
        o.quotient = row.quotient.as_ref().map(|q| q.to_string());
        o.quotient_exact = row.quotient_exact.clone();
        o
    }

    /// The most informative value available, for tables.
    pub fn value(&self) -> String {
        self.exact
            .value_repr
            .clone()
            .or_else(|| self.recognized.clone())
            .or_else(|| {
                self.enclosure
                    .as_ref()
                    .map(|e| format!("{} ± {}", e.mid_dec, e.rad_dec))
            })
            .unwrap_or_default()
    }

    pub fn params_text(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                v => format!("{k}={v}"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn param_u64(&self, k: &str) -> Option<u64> {
        self.params.get(k).and_then(Value::as_u64)
    }

    fn param_i64(&self, k: &str) -> Option<i64> {
        self.params.get(k).and_then(Value::as_i64)
    }
}

/// Exit code over a set of records: 1 if any is refuted, else 2 if any is
/// undecided, else 0. Excluded records never count.
pub fn exit_code(records: &[OutputRecord]) -> i32 {
    let live = records.iter().filter(|r| !r.excluded);
    let mut undecided = false;
    for r in live {
        match r.verdict.as_str() {
            "refuted" => return 1,
            "undecided" | "consistent-zero" => undecided = true,
            _ => {}
        }
    }
    if undecided {
        2
    } else {
        0
    }
}

pub fn to_jsonl(records: &[OutputRecord]) -> Result<String> {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn from_jsonl(text: &str) -> Result<Vec<OutputRecord>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Parse(format!("record line {}: {e}", i + 1))))
        .collect()
}

const COLUMNS: [&str; 13] = [
    "kind",
    "claim",
    "family",
    "params",
    "engine",
    "prec_bits",
    "verdict",
    "observed_sign",
    "value",
    "predicted",
    "divisor",
    "quotient",
    "excluded",
];

fn engine_name(e: Engine) -> &'static str {
    match e {
        Engine::Ball => "ball",
        Engine::Exact => "exact",
        Engine::Structural => "structural",
    }
}

fn cells(r: &OutputRecord) -> [String; 13] {
    [
        r.kind.clone(),
        r.claim.clone(),
        r.family.clone(),
        r.params_text(),
        engine_name(r.engine).to_string(),
        r.prec_bits.to_string(),
        r.verdict.clone(),
        r.observed_sign.map(|s| s.to_string()).unwrap_or_default(),
        r.value(),
        r.predicted.clone().unwrap_or_default(),
        r.divisor.clone().unwrap_or_default(),
        r.quotient
            .clone()
            .or_else(|| r.quotient_exact.clone())
            .unwrap_or_default(),
        r.excluded.to_string(),
    ]
}

pub fn render_csv(records: &[OutputRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(COLUMNS).map_err(io)?;
    for r in records {
        w.write_record(cells(r)).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|")
}

fn md_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(header.len()));
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| md_escape(c)).collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    out
}

/// Markdown rendering: a sequence table and an `a_p^±` table when such
/// records are present, then every record in input order.
pub fn render_markdown(records: &[OutputRecord]) -> String {
    let mut out = String::new();
    let seq: Vec<Vec<String>> = records
        .iter()
        .filter(|r| r.kind == "sequence")
        .map(|r| {
            vec![
                r.param_u64("m").map(|n| n.to_string()).unwrap_or_default(),
                r.quotient.clone().unwrap_or_else(|| "?".into()),
                (r.quotient.is_some()).to_string(),
                engine_name(r.engine).to_string(),
            ]
        })
        .collect();
    if !seq.is_empty() {
        out.push_str("### s_n\n\n");
        out.push_str(&md_table(&["n", "s_n", "certified", "engine"], &seq));
        out.push('\n');
    }
    let mut apm: Vec<(u64, Option<String>, Option<String>)> = Vec::new();
    for r in records.iter().filter(|r| r.kind == "a-pm") {
        let (Some(p), Some(b)) = (r.param_u64("p"), r.param_i64("b")) else {
            continue;
        };
        let idx = match apm.iter().position(|e| e.0 == p) {
            Some(i) => i,
            None => {
                apm.push((p, None, None));
                apm.len() - 1
            }
        };
        if b > 0 {
            apm[idx].1 = r.quotient.clone();
        } else {
            apm[idx].2 = r.quotient.clone();
        }
    }
    if !apm.is_empty() {
        let rows: Vec<Vec<String>> = apm
            .into_iter()
            .map(|(p, a, b)| {
                vec![
                    p.to_string(),
                    a.unwrap_or_else(|| "?".into()),
                    b.unwrap_or_else(|| "?".into()),
                ]
            })
            .collect();
        out.push_str("### a_p^±\n\n");
        out.push_str(&md_table(&["p", "a_p^+", "a_p^-"], &rows));
        out.push('\n');
    }
    let all: Vec<Vec<String>> = records.iter().map(|r| cells(r).to_vec()).collect();
    out.push_str(&md_table(&COLUMNS, &all));
    out
}
