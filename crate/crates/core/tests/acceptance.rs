//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! The run exits 0 when exactly the criteria in `KNOWN_RED` fail. A known-red
//! criterion that starts passing also fails the run, so the list stays honest.

use num_bigint::BigInt;
use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};
use tandet::cli::{from_jsonl, run_with};
use tandet::detcore::{build, det_ball, det_exact, exact_to_ball, MatrixSpec};
use tandet::harness::{
    anomaly_report, coprime_pairs, cot_jk_record, partner_b, sample_pairs, scan_conjecture, verify_products,
    verify_theorem, ConjectureId, Engine, HarnessOptions, Subject, SweepParams, TheoremId, VerificationRecord,
};
use tandet::ntheory::{count_quad_reps, jacobi, pan_sign, zolotarev_sign};
use tandet::quadfield::{class_number_imag, mordell_sign};
use tandet::recognize::Verdict;

/// Criteria expected to fail, with the reason recorded in the README.
const KNOWN_RED: &[u32] = &[8];

const SEQ_REF: [i64; 11] = [1, -2, 4, 4, 48, -160, 32, 2176, 6912, 0, 273408];
const SEQ_BUDGET: Duration = Duration::from_secs(120);
const APM_BUDGET: Duration = Duration::from_secs(300);
/// Largest enclosure radius accepted for a product identity.
const PRODUCT_RADIUS: f64 = 1e-10;
/// Enough bits for a radius below `PRODUCT_RADIUS` on products near 10^30.
const PRODUCT_PREC: u32 = 256;
/// Relative agreement required between a recognized value and the f64 oracle.
const F64_REL_TOL: f64 = 1e-9;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn opts() -> HarnessOptions {
    HarnessOptions {
        deterministic: true,
        ..HarnessOptions::default()
    }
}

// ---------------------------------------------------------------- oracles

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn is_prime_naive(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Legendre symbol by Euler's criterion.
fn euler(a: i64, p: u64) -> i64 {
    let r = pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
    match r {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Jacobi symbol as a product of Euler-criterion Legendre symbols over the
/// factorization of `n`.
fn jacobi_oracle(a: i64, mut n: u64) -> i64 {
    let mut s = 1;
    let mut d = 3;
    while n > 1 {
        if d * d > n {
            d = n;
        }
        while n.is_multiple_of(d) {
            s *= euler(a, d);
            n /= d;
        }
        d += 2;
    }
    s
}

fn parity(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Reduced primitive forms of discriminant `-p`.
fn class_number_forms(p: u64) -> u64 {
    let d = p as i64;
    let mut h = 0;
    let mut a = 1i64;
    while 3 * a * a <= d {
        for b in -a + 1..=a {
            let num = b * b + d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            let g = num_integer::gcd(num_integer::gcd(a, b.abs()), c);
            if g == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

fn det_f64(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs())).unwrap();
        if m[piv][c] == 0.0 {
            return 0.0;
        }
        if piv != c {
            m.swap(piv, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    det
}

fn cot_jk_f64(p: u64) -> f64 {
    let h = ((p - 1) / 2) as usize;
    let pf = p as f64;
    let m = (1..=h)
        .map(|j| {
            (1..=h)
                .map(|k| 1.0 / (std::f64::consts::PI * (j * k) as f64 / pf).tan())
                .collect()
        })
        .collect();
    det_f64(m)
}

// ---------------------------------------------------------------- helpers

fn params(r: &VerificationRecord) -> (u64, i64, i64, u8) {
    match &r.subject {
        Subject::Matrix { spec } => {
            let (a, b, d) = spec.coefficients();
            (spec.modulus(), a.unwrap_or(0), b.unwrap_or(0), d.unwrap_or(0))
        }
        Subject::Identity { p, a, b, .. } => (*p, *a, b.unwrap_or(0), 0),
    }
}

fn as_int(s: &Option<String>) -> Option<BigInt> {
    s.as_deref().and_then(|s| s.parse().ok())
}

fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&p| is_prime_naive(p)).collect()
}

fn least_nonresidue(p: u64) -> i64 {
    (2..p as i64).find(|&a| euler(a, p) == -1).unwrap()
}

// ---------------------------------------------------------------- criteria

fn c1_sequence() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let store = dir.path().join("store.jsonl");
    let t0 = Instant::now();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(
        [
            "tandet",
            "--store",
            store.to_str().unwrap(),
            "--json",
            "--deterministic",
            "seq",
            "s",
            "--n",
            "1..11",
        ],
        &mut out,
        &mut err,
    );
    let elapsed = t0.elapsed();
    ensure(code == 0, || format!("exit {code}: {}", String::from_utf8_lossy(&err)))?;
    let records = from_jsonl(&String::from_utf8_lossy(&out)).map_err(|e| e.to_string())?;
    let got: Vec<Option<BigInt>> = records
        .iter()
        .map(|r| r.quotient.as_deref().and_then(|q| q.parse().ok()))
        .collect();
    let want: Vec<Option<BigInt>> = SEQ_REF.iter().map(|&v| Some(BigInt::from(v))).collect();
    ensure(got == want, || format!("s_n = {got:?}"))?;
    let s10 = &records[9];
    ensure(
        s10.engine == Engine::Exact && s10.exact.value_repr.as_deref() == Some("0"),
        || format!("s_10 certified by {:?}, exact {:?}", s10.engine, s10.exact.value_repr),
    )?;
    ensure(elapsed < SEQ_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("s_1..s_11 exact, s_10 = 0 by exact mode, {elapsed:.2?}"))
}

fn c2_apm() -> Outcome {
    let b = BigInt::from;
    let p19_plus = b(2).pow(12) * 3 * b(5).pow(2) * 7 * 11 * 17;
    let p19_minus = -b(5) * 7 * 89 * 3803;
    let want = [
        (3, b(-1), b(-1)),
        (7, b(60), b(3)),
        (11, b(1728), b(-373)),
        (19, p19_plus, p19_minus),
    ];
    let t0 = Instant::now();
    for (p, plus, minus) in want {
        let got = tandet::harness::compute_a_pm(p, &opts()).map_err(|e| e.to_string())?;
        ensure(got == (plus.clone(), minus.clone()), || {
            format!("p={p}: got {got:?}, want ({plus}, {minus})")
        })?;
    }
    let elapsed = t0.elapsed();
    ensure(elapsed < APM_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("p = 3, 7, 11, 19 exact, {elapsed:.2?}"))
}

fn c3_quadratic_sweep() -> Outcome {
    let recs = verify_theorem(TheoremId::T1_1, &SweepParams::range(5, 37), &opts()).map_err(|e| e.to_string())?;
    for p in odd_primes(5, 37) {
        let mine: Vec<_> = recs.iter().filter(|r| params(r).0 == p).collect();
        let classes: BTreeSet<(i64, i64, u8)> = mine
            .iter()
            .map(|r| {
                let (_, a, b, d) = params(r);
                (euler(a, p), euler(b, p), d)
            })
            .collect();
        ensure(classes.len() == 8, || format!("p={p}: covers only {classes:?}"))?;
    }
    for r in &recs {
        ensure(r.verdict.is_confirmed() && !r.excluded, || {
            format!("{}: {}", r.subject_label(), r.verdict)
        })?;
        let zero = r.predicted.as_ref().is_some_and(|f| f.is_zero());
        if zero {
            ensure(matches!(r.engine, Engine::Structural | Engine::Exact), || {
                format!("{}: zero proved by {:?}", r.subject_label(), r.engine)
            })?;
        } else {
            ensure(r.observed_sign.is_some(), || {
                format!("{}: no sign recorded", r.subject_label())
            })?;
        }
    }
    let anomaly = anomaly_report(&opts()).map_err(|e| e.to_string())?;
    ensure(!anomaly.is_empty() && anomaly.iter().all(|r| r.excluded), || {
        "p = 3 not reported as excluded".into()
    })?;
    let refuted: Vec<String> = anomaly
        .iter()
        .filter(|r| r.verdict.is_refuted())
        .map(|r| format!("{} = {}", r.subject_label(), r.exact.clone().unwrap_or_default()))
        .collect();
    Ok(format!(
        "{} instances confirmed; p = 3 refuted verbatim: {}",
        recs.len(),
        refuted.join("; ")
    ))
}

fn c4_linear_family() -> Outcome {
    let recs = verify_theorem(TheoremId::T1_2, &SweepParams::range(3, 15), &opts()).map_err(|e| e.to_string())?;
    for n in (3..=15).step_by(2) {
        let pairs: BTreeSet<(i64, i64)> = recs
            .iter()
            .filter(|r| params(r).0 == n)
            .map(|r| (params(r).1, params(r).2))
            .collect();
        ensure(pairs.len() >= 4, || format!("n={n}: only {} pairs", pairs.len()))?;
    }
    for r in &recs {
        let (n, a, b, delta) = params(r);
        ensure(r.verdict.is_confirmed(), || {
            format!("{}: {}", r.subject_label(), r.verdict)
        })?;
        if delta == 0 {
            ensure(r.engine == Engine::Structural && r.certificate.is_some(), || {
                format!("{}: zero not certified structurally", r.subject_label())
            })?;
        } else {
            let want = BigInt::from(jacobi_oracle(-a * b, n)) * BigInt::from(n).pow(n as u32 - 2);
            let got = as_int(&r.exact).or_else(|| as_int(&r.recognized));
            ensure(got.as_ref() == Some(&want), || {
                format!("{}: {got:?} != {want}", r.subject_label())
            })?;
        }
    }
    Ok(format!("{} instances for odd n in 3..15", recs.len()))
}

fn c5_squared_family() -> Outcome {
    let recs = verify_theorem(TheoremId::T1_3, &SweepParams::range(5, 23), &opts()).map_err(|e| e.to_string())?;
    let primes: BTreeSet<u64> = recs.iter().map(|r| params(r).0).collect();
    ensure(primes == [5, 7, 11, 13, 17, 19, 23].into_iter().collect(), || {
        format!("primes {primes:?}")
    })?;
    for r in &recs {
        let (p, a, b, _) = params(r);
        ensure(euler(-a * b, p) == -1, || {
            format!("{}: (-ab/p) != -1", r.subject_label())
        })?;
        ensure(r.verdict.is_confirmed(), || {
            format!("{}: {}", r.subject_label(), r.verdict)
        })?;
        // p · det² must enclose 2^(p-1).
        let Some(Subject::Matrix { spec }) = Some(&r.subject) else {
            unreachable!()
        };
        let d = det_ball(&build(spec).map_err(|e| e.to_string())?, 128)
            .map_err(|e| e.to_string())?
            .value;
        let sq = d.mul(&d).mul(&tandet::realball::RealBall::from_i64(p as i64, 128));
        ensure(sq.contains_int(&(BigInt::from(1) << (p - 1))), || {
            format!("{}: p·det² = {sq}", r.subject_label())
        })?;
        if p % 4 == 3 {
            let h = class_number_forms(p) as i64;
            let want = if ((h + 1) / 2) % 2 == 0 { 1 } else { -1 } * euler(a, p);
            ensure(r.observed_sign == Some(want as i8), || {
                format!("{}: sign {:?}, want {want}", r.subject_label(), r.observed_sign)
            })?;
        }
    }
    Ok(format!(
        "{} instances, magnitudes enclosed, signs match for p = 3 (mod 4)",
        recs.len()
    ))
}

fn c6_cot_and_quotients() -> Outcome {
    let mut parts = Vec::new();
    for p in [7u64, 11, 19, 23, 5, 13, 17] {
        let r = cot_jk_record(p, &opts()).map_err(|e| e.to_string())?;
        let q: num_rational::BigRational = r
            .recognized
            .as_deref()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format!("p={p}: not recognized"))?;
        let want_note = if p % 4 == 3 { "D_p/√p" } else { "D_p" };
        ensure(r.note.as_deref().is_some_and(|n| n.ends_with(want_note)), || {
            format!("p={p}: note {:?}", r.note)
        })?;
        let scale = if p % 4 == 3 { (p as f64).sqrt() } else { 1.0 };
        let got = num_traits::ToPrimitive::to_f64(&q).unwrap() * scale;
        let oracle = cot_jk_f64(p);
        ensure(((got - oracle) / oracle).abs() < F64_REL_TOL, || {
            format!("p={p}: {got} vs f64 {oracle}")
        })?;
        if p == 5 {
            ensure(q == BigInt::from(-2).into(), || format!("D_5 = {q}"))?;
        }
        parts.push(format!("{p}:{q}"));
    }
    let rows = scan_conjecture(ConjectureId::C5_1, 7, 23, &opts()).map_err(|e| e.to_string())?;
    for row in &rows {
        let q = row
            .quotient
            .clone()
            .ok_or_else(|| format!("{}: no certified quotient", row.record.subject_label()))?;
        ensure(q > BigInt::from(0), || {
            format!("{}: quotient {q}", row.record.subject_label())
        })?;
    }
    ensure(
        rows.first().and_then(|r| r.quotient.clone()) == Some(BigInt::from(1)),
        || "p=7 quotient != 1".into(),
    )?;
    Ok(format!(
        "recognized {}; 5.1 quotients {:?}",
        parts.join(" "),
        rows.iter().map(|r| r.quotient.clone().unwrap()).collect::<Vec<_>>()
    ))
}

fn c7_cos_family() -> Outcome {
    let rows = scan_conjecture(ConjectureId::C5_6, 1, 12, &opts()).map_err(|e| e.to_string())?;
    for n in 1..=12u64 {
        let has = |part: &str| {
            rows.iter()
                .any(|r| r.record.claim == part && r.record.spec().unwrap().modulus() == n)
        };
        ensure(has("5.11"), || format!("n={n}: no 5.11 row"))?;
        ensure(n == 1 || has("5.13"), || format!("n={n}: no 5.13 row"))?;
        ensure(n % 2 == 0 || has("5.12"), || format!("n={n}: no 5.12 row"))?;
        ensure(n % 2 == 0 || n == 1 || has("5.14"), || format!("n={n}: no 5.14 row"))?;
    }
    for r in rows.iter().map(|r| &r.record) {
        ensure(r.verdict == Verdict::Confirmed, || {
            format!("{} ({}): {}", r.subject_label(), r.claim, r.verdict)
        })?;
        if matches!(r.spec(), Some(MatrixSpec::CosJk { .. })) {
            ensure(r.engine != Engine::Ball, || {
                format!("{}: cos value decided by ball only", r.subject_label())
            })?;
        }
    }
    Ok(format!("{} rows for n = 1..12 confirmed", rows.len()))
}

fn c8_products() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for p in odd_primes(3, 23) {
        for a in [1, least_nonresidue(p)] {
            let recs =
                verify_products(p, a, Some(partner_b(p, a)), PRODUCT_PREC, &opts()).map_err(|e| e.to_string())?;
            for r in recs.iter().filter(|r| !r.excluded) {
                count += 1;
                let rad = |e: &Option<tandet::harness::Enclosure>| {
                    e.as_ref()
                        .map_or(0.0, |e| e.rad.parse::<f64>().unwrap_or(f64::INFINITY))
                };
                let rr = rad(&r.enclosure).max(rad(&r.enclosure_im));
                if !r.verdict.is_confirmed() || rr >= PRODUCT_RADIUS {
                    failures.push(format!(
                        "({}) p={p} a={a}: {} exact {} radius {rr:.1e}",
                        r.claim,
                        r.verdict,
                        r.exact.clone().unwrap_or_default()
                    ));
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(format!("{count} identity instances confirmed"))
    } else {
        Err(format!(
            "{} of {count} instances fail: {}",
            failures.len(),
            failures.join("; ")
        ))
    }
}

fn c9_oracles() -> Outcome {
    let e = |x: tandet::Error| x.to_string();
    for n in (3..=99u64).step_by(2) {
        for a in (1..n as i64).filter(|&a| num_integer::gcd(a as u64, n) == 1) {
            let z = zolotarev_sign(a, n).map_err(e)?;
            let perm: Vec<usize> = (0..n).map(|j| (a as u64 * j % n) as usize).collect();
            let j = jacobi_oracle(a, n) as i8;
            ensure(
                z.sign == j && parity(&perm) == j && jacobi(a, n).map_err(e)?.value() as i8 == j,
                || format!("zolotarev({a},{n})"),
            )?;
            let h = ((n - 1) / 2) as usize;
            let pi: Vec<usize> = (1..=h as u64)
                .map(|j| {
                    let r = a as u64 * j % n;
                    (r.min(n - r) - 1) as usize
                })
                .collect();
            let want = if n.div_ceil(2) % 2 == 0 { 1 } else { j };
            ensure(pan_sign(a, n).map_err(e)?.sign == want && parity(&pi) == want, || {
                format!("pan({a},{n})")
            })?;
        }
    }
    for p in odd_primes(3, 31) {
        for a in 1..p as i64 {
            for b in (1..p as i64).filter(|&b| euler(-a * b, p) == -1) {
                for m in 0..p as i64 {
                    let h = (p - 1) / 2;
                    let brute = (1..=h)
                        .flat_map(|j| (1..=h).map(move |k| (j, k)))
                        .filter(|&(j, k)| (a * (j * j) as i64 + b * (k * k) as i64 - m).rem_euclid(p as i64) == 0)
                        .count() as u64;
                    ensure(count_quad_reps(p, a, b, m).map_err(e)? == brute, || {
                        format!("reps p={p} a={a} b={b} m={m}")
                    })?;
                }
            }
        }
    }
    let mut checked = 0;
    for p in odd_primes(3, 199).into_iter().filter(|p| p % 4 == 3) {
        let h = class_number_forms(p);
        ensure(class_number_imag(p).map_err(e)? == h, || format!("h(-{p})"))?;
        if p > 3 {
            let fact = (1..=(p - 1) / 2).fold(1u64, |acc, k| acc * k % p);
            let fact = if fact == 1 { 1 } else { -1 };
            let want = if h.div_ceil(2).is_multiple_of(2) { 1 } else { -1 };
            ensure(fact == want && mordell_sign(p).map_err(e)?.value() == want, || {
                format!("mordell p={p}")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "zolotarev/pan n <= 99, reps p <= 31, class numbers and {checked} mordell primes p <= 199"
    ))
}

fn cross_engine_instances() -> Vec<MatrixSpec> {
    let mut v = Vec::new();
    for p in odd_primes(3, 13) {
        let pairs: Vec<(i64, i64)> = if p <= 7 {
            (1..p as i64).flat_map(|a| (1..p as i64).map(move |b| (a, b))).collect()
        } else {
            sample_pairs(p)
        };
        v.push(MatrixSpec::CotJk { p });
        for &(a, b) in &pairs {
            for delta in [0, 1] {
                v.push(MatrixSpec::TanQuad { p, a, b, delta });
                v.push(MatrixSpec::Tan2Quad { p, a, b, delta });
            }
            v.push(MatrixSpec::CotQuad { p, a, b });
            v.push(MatrixSpec::Cot2Quad { p, a, b });
            v.push(MatrixSpec::LegTanQuad { p, a, b });
            v.push(MatrixSpec::LegCotQuad { p, a, b });
        }
    }
    for n in (3..=13u64).step_by(2) {
        for (a, b) in coprime_pairs(n) {
            for delta in [0, 1] {
                v.push(MatrixSpec::TanLin { n, a, b, delta });
            }
        }
        v.push(MatrixSpec::Tan2LinSum { n });
        v.push(MatrixSpec::Tan2LinDiff { n });
    }
    for m in 1..=6 {
        v.push(MatrixSpec::TanJk { m });
        v.push(MatrixSpec::Tan2Jk { m });
    }
    for n in 2..=13u64 {
        for doubled in [false, true] {
            for delta in [0, 1] {
                v.push(MatrixSpec::CosJk { n, delta, doubled });
            }
            v.push(MatrixSpec::SinJk { n, doubled });
        }
    }
    v
}

fn c10_cross_engine() -> Outcome {
    let (mut checked, mut skipped, mut violations) = (0, 0, Vec::new());
    let mut families = BTreeSet::new();
    for spec in cross_engine_instances() {
        let Ok(m) = build(&spec) else {
            skipped += 1;
            continue;
        };
        let exact = det_exact(&m).map_err(|e| format!("{spec}: {e}"))?;
        let ball = det_ball(&m, 128).map_err(|e| format!("{spec}: {e}"))?;
        if !ball.value.contains_ball(&exact_to_ball(&exact, 1024)) {
            violations.push(spec.to_string());
        }
        families.insert(spec.family_name());
        checked += 1;
    }
    ensure(families.len() == 14, || {
        format!("only {} families built", families.len())
    })?;
    if violations.is_empty() {
        Ok(format!(
            "{checked} instances over 14 families, 0 violations ({skipped} invalid parameter sets skipped)"
        ))
    } else {
        Err(format!("{} violations: {}", violations.len(), violations.join(", ")))
    }
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "sequence s_n", c1_sequence),
        (2, "a_p^± table", c2_apm),
        (3, "1.1 sweep", c3_quadratic_sweep),
        (4, "1.2", c4_linear_family),
        (5, "1.3", c5_squared_family),
        (6, "1.4 and 5.1", c6_cot_and_quotients),
        (7, "5.6 scan", c7_cos_family),
        (8, "product identities", c8_products),
        (9, "oracle invariants", c9_oracles),
        (10, "cross-engine containment", c10_cross_engine),
    ];
    let mut red = Vec::new();
    for (id, name, f) in criteria {
        let t0 = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let t = t0.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} ({name}): PASS [{t:.2?}] {detail}"),
            Err(detail) => {
                let tag = if KNOWN_RED.contains(&id) { " (known red)" } else { "" };
                println!("criterion {id:>2} ({name}): FAIL{tag} [{t:.2?}] {detail}");
                red.push(id);
            }
        }
    }
    if red != KNOWN_RED {
        println!("acceptance: red set {red:?} differs from the documented {KNOWN_RED:?}");
        std::process::exit(1);
    }
    println!(
        "acceptance: {} of 10 pass; red set matches the documented {KNOWN_RED:?}",
        10 - red.len()
    );
}
