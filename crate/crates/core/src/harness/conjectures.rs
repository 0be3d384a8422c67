use super::engine::{evaluate_claim, par_map, quotient_row, Divisor, HarnessOptions};
use super::record::{Divisibility, Engine, ScanRow, SequenceRecord, Source};
use super::theorems::sample_pairs;
use crate::detcore::MatrixSpec;
use crate::error::{Error, Result};
use crate::ntheory::{is_odd_prime, jacobi, legendre, odd_primes, SymbolValue};
use crate::quadfield::class_number_imag;
use crate::recognize::{ClosedForm, Sign};
use num_bigint::BigInt;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConjectureId {
    C5_1,
    C5_2i,
    C5_2ii,
    C5_3,
    C5_4,
    C5_5,
    C5_6,
}

impl ConjectureId {
    pub const ALL: [ConjectureId; 7] = [
        ConjectureId::C5_1,
        ConjectureId::C5_2i,
        ConjectureId::C5_2ii,
        ConjectureId::C5_3,
        ConjectureId::C5_4,
        ConjectureId::C5_5,
        ConjectureId::C5_6,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConjectureId::C5_1 => "5.1",
            ConjectureId::C5_2i => "5.2i",
            ConjectureId::C5_2ii => "5.2ii",
            ConjectureId::C5_3 => "5.3",
            ConjectureId::C5_4 => "5.4",
            ConjectureId::C5_5 => "5.5",
            ConjectureId::C5_6 => "5.6",
        }
    }

    pub fn default_range(self) -> (u64, u64) {
        match self {
            ConjectureId::C5_1 => (3, 23),
            ConjectureId::C5_2i | ConjectureId::C5_2ii => (1, 11),
            ConjectureId::C5_3 => (3, 15),
            ConjectureId::C5_4 | ConjectureId::C5_5 => (3, 19),
            ConjectureId::C5_6 => (1, 12),
        }
    }
}

impl FromStr for ConjectureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<ConjectureId> {
        ConjectureId::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| {
            Error::Param(format!(
                "unknown conjecture id {s:?}; expected one of 5.1, 5.2i, 5.2ii, 5.3, 5.4, 5.5, 5.6"
            ))
        })
    }
}

impl fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

enum Task {
    Quotient {
        label: &'static str,
        spec: MatrixSpec,
        divisor: Divisor,
        positive: bool,
    },
    Equality {
        part: &'static str,
        spec: MatrixSpec,
        form: ClosedForm,
    },
}

fn plus(alpha_half: i64, base: u64, beta_half: i64) -> ClosedForm {
    ClosedForm::power(Sign::Plus, alpha_half, base, beta_half)
}

fn parity_sign(e: u64) -> Sign {
    if e.is_multiple_of(2) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn primes_3_mod_4(lo: u64, hi: u64) -> Vec<u64> {
    odd_primes(lo, hi).into_iter().filter(|p| p % 4 == 3).collect()
}

fn quotient(label: &'static str, spec: MatrixSpec, divisor: Divisor) -> Task {
    Task::Quotient {
        label,
        spec,
        divisor,
        positive: false,
    }
}

/// `(-2/p) 2^((p-3)/2) p^((p-5)/4) h(-p)`, the divisor the cot determinant
/// is claimed to be a positive multiple of.
pub fn cot_jk_divisor(p: u64) -> Result<Divisor> {
    let pi = p as i64;
    let h = class_number_imag(p)?;
    let sign = Sign::from_symbol(legendre(-2, p));
    Ok(Divisor::new(h, ClosedForm::power(sign, pi - 3, p, (pi - 5) / 2)))
}

/// `(2n+1)^(n/2)`.
pub fn tan_jk_divisor(n: u64) -> Divisor {
    Divisor::new(1, plus(0, 2 * n + 1, n as i64))
}

fn tasks(id: ConjectureId, lo: u64, hi: u64) -> Result<Vec<Task>> {
    let mut out = Vec::new();
    match id {
        ConjectureId::C5_1 => {
            for p in primes_3_mod_4(lo, hi) {
                out.push(Task::Quotient {
                    label: "5.1",
                    spec: MatrixSpec::CotJk { p },
                    divisor: cot_jk_divisor(p)?,
                    positive: true,
                });
            }
        }
        ConjectureId::C5_2i => {
            for n in lo.max(1)..=hi {
                out.push(quotient("5.2i", MatrixSpec::TanJk { m: n }, tan_jk_divisor(n)));
            }
        }
        ConjectureId::C5_2ii => {
            for n in lo.max(1)..=hi {
                let ni = n as i64;
                let d = Divisor::new(1, plus(4 * (ni - 1), 2 * n + 1, ni + 1));
                out.push(quotient("5.2ii", MatrixSpec::Tan2Jk { m: n }, d));
            }
        }
        ConjectureId::C5_3 => {
            for n in (lo.max(3)..=hi).filter(|n| n % 2 == 1) {
                let d = Divisor::new(1, plus(0, n, 2 * (n as i64 - 2)));
                out.push(quotient("5.3", MatrixSpec::Tan2LinSum { n }, d));
                out.push(quotient(
                    "5.3-diff",
                    MatrixSpec::Tan2LinDiff { n },
                    Divisor::new(1, ClosedForm::integer(1)),
                ));
            }
        }
        ConjectureId::C5_4 => {
            for p in primes_3_mod_4(lo, hi) {
                let pi = p as i64;
                for (a, b) in sample_pairs(p) {
                    let sq = MatrixSpec::Tan2Quad { p, a, b, delta: 1 };
                    out.push(quotient("5.4-tan2-1", sq, Divisor::new(1, plus(0, p, (pi - 3) / 2))));
                    let sq = MatrixSpec::Tan2Quad { p, a, b, delta: 0 };
                    out.push(quotient("5.4-tan2-0", sq, Divisor::new(1, plus(0, p, (pi + 1) / 2))));
                    if legendre(a * b, p) == SymbolValue::PLUS {
                        let c = MatrixSpec::Cot2Quad { p, a, b };
                        out.push(quotient("5.4-cot2", c, Divisor::new(1, plus(2 * (pi - 3), p, -2))));
                    }
                }
            }
        }
        ConjectureId::C5_5 => {
            for p in primes_3_mod_4(lo, hi) {
                for (a, b) in sample_pairs(p) {
                    let t = MatrixSpec::LegTanQuad { p, a, b };
                    out.push(quotient("5.5-tan", t, Divisor::new(1, plus(0, p, 2))));
                    if legendre(a * b, p) == SymbolValue::PLUS {
                        let c = MatrixSpec::LegCotQuad { p, a, b };
                        out.push(quotient("5.5-cot", c, Divisor::new(1, plus(0, p, -1))));
                    }
                }
            }
        }
        ConjectureId::C5_6 => {
            for n in lo.max(1)..=hi {
                let ni = n as i64;
                let s11 = parity_sign(n.div_ceil(2));
                out.push(Task::Equality {
                    part: "5.11",
                    spec: MatrixSpec::CosJk {
                        n,
                        delta: 1,
                        doubled: false,
                    },
                    form: ClosedForm::power(s11, -(ni - 1), n, ni - 1),
                });
                // the full 0..n range carries an extra factor 2n
                out.push(Task::Equality {
                    part: "5.11",
                    spec: MatrixSpec::CosJk {
                        n,
                        delta: 0,
                        doubled: false,
                    },
                    form: ClosedForm::power(s11, 3 - ni, n, ni + 1),
                });
                if n % 2 == 1 {
                    let s2 = Sign::from_symbol(jacobi(2, n)?);
                    for delta in [0u8, 1] {
                        if n == 1 && delta == 1 {
                            continue;
                        }
                        out.push(Task::Equality {
                            part: "5.12",
                            spec: MatrixSpec::CosJk {
                                n,
                                delta,
                                doubled: true,
                            },
                            form: ClosedForm::power(s2, -(ni - 1), n, (ni + 1) / 2 - 2 * delta as i64),
                        });
                    }
                }
                if n > 1 {
                    out.push(Task::Equality {
                        part: "5.13",
                        spec: MatrixSpec::SinJk { n, doubled: false },
                        form: ClosedForm::power(parity_sign((n - 1) / 2), -(ni - 1), n, ni - 1),
                    });
                }
                if n % 2 == 1 && n > 1 {
                    out.push(Task::Equality {
                        part: "5.14",
                        spec: MatrixSpec::SinJk { n, doubled: true },
                        form: ClosedForm::power(Sign::from_symbol(jacobi(-2, n)?), -(ni - 1), n, (ni - 1) / 2),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Scans a conjecture over `lo..=hi` (primes or `n`, depending on the id).
///
/// Divisibility claims produce rows with a certified quotient or a
/// refutation; the equality claims of 5.6 produce verification rows.
/// Rows come back in parameter order.
pub fn scan_conjecture(id: ConjectureId, lo: u64, hi: u64, opts: &HarnessOptions) -> Result<Vec<ScanRow>> {
    if lo > hi {
        return Err(Error::Param(format!("empty range {lo}..{hi}")));
    }
    let work = tasks(id, lo, hi)?;
    par_map(opts, &work, |t| match t {
        Task::Quotient {
            label,
            spec,
            divisor,
            positive,
        } => quotient_row(id.as_str(), label, spec, divisor, *positive, opts),
        Task::Equality { part, spec, form } => {
            let record = evaluate_claim(part, spec, Some(form), opts)?;
            Ok(ScanRow {
                conjecture: id.as_str().to_string(),
                record,
                divisor: None,
                quotient: None,
                quotient_exact: None,
                divisibility: None,
            })
        }
    })
    .into_iter()
    .collect()
}

fn source_of(engine: Engine) -> Source {
    match engine {
        Engine::Ball => Source::Ball,
        Engine::Exact => Source::Exact,
        Engine::Structural => Source::Structural,
    }
}

/// `s_n = (2n+1)^(-n/2) det[tan π jk/(2n+1)]_{1<=j,k<=n}` for `1..=n_max`.
pub fn sequence_s(n_max: u64, opts: &HarnessOptions) -> Result<Vec<SequenceRecord>> {
    if n_max == 0 {
        return Err(Error::Param("n_max must be at least 1".into()));
    }
    let rows = scan_conjecture(ConjectureId::C5_2i, 1, n_max, opts)?;
    Ok(sequence_from_rows(&rows))
}

/// Sequence records from `5.2i` scan rows, indexed by the scan parameter `m`.
pub fn sequence_from_rows(rows: &[ScanRow]) -> Vec<SequenceRecord> {
    rows.iter()
        .filter_map(|row| match row.record.spec() {
            Some(MatrixSpec::TanJk { m }) => Some(SequenceRecord {
                n: *m,
                certified: row.quotient.is_some(),
                value: row.quotient.clone(),
                source: source_of(row.record.engine),
            }),
            _ => None,
        })
        .collect()
}

/// The two weighted-tan rows behind `a_p^±`.
pub fn a_pm_rows(p: u64, opts: &HarnessOptions) -> Result<[ScanRow; 2]> {
    if !is_odd_prime(p) || p % 4 != 3 {
        return Err(Error::Param(format!("a_p^± needs a prime p = 3 (mod 4), got {p}")));
    }
    let d = Divisor::new(1, plus(0, p, 2));
    let specs = [
        MatrixSpec::LegTanQuad { p, a: 1, b: 1 },
        MatrixSpec::LegTanQuad { p, a: 1, b: -1 },
    ];
    let mut rows = par_map(opts, &specs, |s| quotient_row("5.5", "a_p", s, &d, false, opts))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let minus = rows.pop().expect("two rows");
    let plus = rows.pop().expect("two rows");
    Ok([plus, minus])
}

/// `(a_p^+, a_p^-)`, both certified integers.
pub fn compute_a_pm(p: u64, opts: &HarnessOptions) -> Result<(BigInt, BigInt)> {
    let [plus, minus] = a_pm_rows(p, opts)?;
    let take = |row: ScanRow, which: &str| match (row.quotient, row.divisibility) {
        (Some(q), Some(Divisibility::Divisible)) => Ok(q),
        (_, d) => Err(Error::Undecided(format!(
            "a_{p}^{which} not certified as an integer ({d:?}, quotient {})",
            row.quotient_exact.unwrap_or_else(|| "unknown".into())
        ))),
    };
    Ok((take(plus, "+")?, take(minus, "-")?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> HarnessOptions {
        HarnessOptions {
            jobs: 2,
            deterministic: true,
            ..HarnessOptions::default()
        }
    }

    #[test]
    fn scan_examples() {
        let rows = scan_conjecture(ConjectureId::C5_1, 7, 7, &opts()).unwrap();
        assert_eq!(rows[0].quotient, Some(BigInt::from(1)));
        assert!(rows[0].record.verdict.is_confirmed());
        let rows = scan_conjecture(ConjectureId::C5_3, 3, 3, &opts()).unwrap();
        assert_eq!(rows[0].quotient, Some(BigInt::from(3)));
        let rows = scan_conjecture(ConjectureId::C5_6, 3, 3, &opts()).unwrap();
        let sin = rows.iter().find(|r| r.record.claim == "5.13").unwrap();
        assert!(sin.record.verdict.is_confirmed());
        assert_eq!(sin.record.exact.as_deref(), Some("-3/2"));
    }

    #[test]
    fn small_sequence_and_a_pm() {
        let s = sequence_s(4, &opts()).unwrap();
        let v: Vec<i64> = s
            .iter()
            .map(|r| i64::try_from(r.value.clone().unwrap()).unwrap())
            .collect();
        assert_eq!(v, vec![1, -2, 4, 4]);
        assert!(s.iter().all(|r| r.certified));
        assert_eq!(compute_a_pm(7, &opts()).unwrap(), (BigInt::from(60), BigInt::from(3)));
        assert!(compute_a_pm(13, &opts()).is_err());
        assert!("5.7".parse::<ConjectureId>().is_err());
    }
}
