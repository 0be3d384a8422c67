use super::record::SequenceRecord;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Parses b-file text: one `index value` pair per line, `#` comments and
/// blank lines ignored.
pub fn parse_bfile(text: &str) -> Result<Vec<(u64, BigInt)>> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Parse(format!("b-file line {}: {raw:?}", no + 1));
        let mut it = line.split_whitespace();
        let (Some(i), Some(v), None) = (it.next(), it.next(), it.next()) else {
            return Err(bad());
        };
        let i: u64 = i.parse().map_err(|_| bad())?;
        let v: BigInt = v.parse().map_err(|_| bad())?;
        out.push((i, v));
    }
    Ok(out)
}

/// The expected relation between `s_n` and the b-file term `t_n`:
/// `s_n = -t_n` for `n = 3 (mod 4)` and `s_n = t_n` otherwise.
pub fn expected_sign(n: u64) -> i8 {
    if n % 4 == 3 {
        -1
    } else {
        1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OeisRow {
    pub n: u64,
    pub s: BigInt,
    pub t: BigInt,
    pub expected_sign: i8,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OeisComparison {
    pub rows: Vec<OeisRow>,
    /// Indices where the relation fails.
    pub mismatches: Vec<u64>,
    /// Indices of the computed range missing from the b-file, or whose
    /// computed value is not certified.
    pub gaps: Vec<u64>,
}

impl OeisComparison {
    pub fn all_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares computed `s_n` with b-file terms index by index.
pub fn compare_oeis(seq: &[SequenceRecord], bfile: &[(u64, BigInt)]) -> Result<OeisComparison> {
    if seq.is_empty() || bfile.is_empty() {
        return Err(Error::Param("both the sequence and the b-file must be nonempty".into()));
    }
    let t: BTreeMap<u64, &BigInt> = bfile.iter().map(|(i, v)| (*i, v)).collect();
    let mut rows = Vec::new();
    let mut gaps = Vec::new();
    for r in seq {
        match (&r.value, t.get(&r.n)) {
            (Some(s), Some(&tv)) if r.certified => {
                let e = expected_sign(r.n);
                let want = if e < 0 { -tv.clone() } else { tv.clone() };
                rows.push(OeisRow {
                    n: r.n,
                    s: s.clone(),
                    t: tv.clone(),
                    expected_sign: e,
                    matches: *s == want,
                });
            }
            _ => gaps.push(r.n),
        }
    }
    if rows.is_empty() {
        return Err(Error::Param(
            "the sequence and the b-file share no certified index".into(),
        ));
    }
    let mismatches = rows.iter().filter(|r| !r.matches).map(|r| r.n).collect();
    Ok(OeisComparison { rows, mismatches, gaps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::record::Source;

    fn rec(n: u64, v: i64) -> SequenceRecord {
        SequenceRecord {
            n,
            value: Some(v.into()),
            certified: true,
            source: Source::Exact,
        }
    }

    #[test]
    fn parsing() {
        let b = parse_bfile("# header\n1 1\n\n2 -2\n  3 -4 \n").unwrap();
        assert_eq!(b, vec![(1, 1.into()), (2, (-2).into()), (3, (-4).into())]);
        let e = parse_bfile("1 1\n2 x\n").unwrap_err();
        assert!(e.to_string().contains("line 2"));
        assert!(parse_bfile("1 2 3\n").is_err());
    }

    #[test]
    fn comparison() {
        let b = parse_bfile("1 1\n2 -2\n3 -4\n10 0\n").unwrap();
        let c = compare_oeis(&[rec(1, 1), rec(2, -2), rec(3, 4), rec(10, 0), rec(11, 5)], &b).unwrap();
        assert!(c.all_match());
        assert_eq!(c.gaps, vec![11]);
        let c = compare_oeis(&[rec(2, 2)], &b).unwrap();
        assert_eq!(c.mismatches, vec![2]);
        assert!(compare_oeis(&[rec(5, 1)], &b).is_err());
        assert!(compare_oeis(&[], &b).is_err());
    }
}
