use super::config::{OutputFormat, RunConfig};
use super::oeis::{OeisClient, Origin};
use super::report::{exit_code, from_jsonl, render_csv, render_markdown, to_jsonl, OutputRecord};
use super::store::{Store, StoreEntry, StoreKey};
use crate::detcore::MatrixSpec;
use crate::error::{Error, Result};
use crate::harness::{
    a_pm_rows, compare_oeis, evaluate_claim, invariants, par_map, partner_b, scan_conjecture, verify_products,
    verify_theorem, ConjectureId, HarnessOptions, SequenceRecord, Source, SweepParams, TheoremId,
};
use crate::ntheory::{is_odd_prime, least_nonresidue, odd_primes};
use crate::recognize::predict;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "tandet",
    version,
    about = "Certified trigonometric determinants over quadratic residues"
)]
struct Cli {
    /// Flat key=value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Starting precision in bits.
    #[arg(long, global = true)]
    prec: Option<u32>,
    #[arg(long, global = true)]
    prec_cap: Option<u32>,
    /// json, csv or table.
    #[arg(long, global = true)]
    format: Option<OutputFormat>,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    /// Zero wall-clock fields for byte-identical output.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Never touch the network.
    #[arg(long, global = true)]
    offline: bool,
    /// Result store; defaults to `<cache-dir>/store.jsonl`.
    #[arg(long, global = true)]
    store: Option<PathBuf>,
    #[arg(long, global = true, conflicts_with = "store")]
    no_store: bool,
    /// Print store counters to stderr.
    #[arg(long, global = true)]
    stats: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one determinant.
    Compute(ComputeArgs),
    /// Sweep a theorem, or the product identities.
    Verify(VerifyArgs),
    /// Scan a conjecture.
    Scan(ScanArgs),
    /// Tabulate s_n or a_p^±.
    Seq(SeqArgs),
    /// Fetch an OEIS b-file.
    Oeis(OeisArgs),
    /// Render stored records.
    Report(ReportArgs),
}

#[derive(Debug, Args, Serialize)]
struct ComputeArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
    #[arg(long)]
    delta: Option<u8>,
    #[arg(long)]
    doubled: bool,
}

#[derive(Debug, Args, Serialize)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "products", conflicts_with = "products")]
    theorem: Option<String>,
    /// Check the product identities instead of a theorem.
    #[arg(long)]
    products: bool,
    /// Prime range `lo..hi` (inclusive).
    #[arg(long)]
    p: Option<String>,
    /// Odd modulus range `lo..hi` (inclusive).
    #[arg(long)]
    n: Option<String>,
    /// Coefficient pair `a,b`; repeatable.
    #[arg(long = "pair", allow_hyphen_values = true)]
    pairs: Vec<String>,
    /// Multiplier for `--products`; default 1 and the least nonresidue.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
}

#[derive(Debug, Args, Serialize)]
struct ScanArgs {
    #[arg(long)]
    conjecture: String,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    n: Option<String>,
}

#[derive(Debug, Args, Serialize)]
struct SeqArgs {
    /// `s` or `a`.
    which: String,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    p: Option<String>,
    /// Compare `s_n` with an OEIS b-file.
    #[arg(long)]
    compare: Option<String>,
    /// Local b-file used by `--compare`.
    #[arg(long)]
    fixture: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OeisArgs {
    id: String,
    #[arg(long)]
    fixture: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(long)]
    input: PathBuf,
}

/// Parses `lo..hi`, `lo..=hi` or a single value, inclusive.
pub fn parse_range(s: &str) -> Result<(u64, u64)> {
    let bad = || Error::Param(format!("bad range {s:?}, expected lo..hi"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo.trim(), hi.trim_start_matches('=').trim()),
        None => (s.trim(), s.trim()),
    };
    let lo: u64 = lo.parse().map_err(|_| bad())?;
    let hi: u64 = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn parse_pair(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Param(format!("bad pair {s:?}, expected a,b"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn range_or(p: &Option<String>, n: &Option<String>, default: (u64, u64)) -> Result<(u64, u64)> {
    match (p, n) {
        (Some(_), Some(_)) => Err(Error::Param("give either --p or --n, not both".into())),
        (Some(r), None) | (None, Some(r)) => parse_range(r),
        (None, None) => Ok(default),
    }
}

/// Maps library errors onto the exit-code contract.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Param(_) | Error::Domain(_) | Error::Parse(_) | Error::Io(_) => 3,
        Error::Network(_) => 4,
        Error::Undecided(_) | Error::Budget(_) | Error::Internal(_) => 2,
    }
}

struct Ctx {
    cfg: RunConfig,
    opts: HarnessOptions,
    store: Option<Store>,
    computed: u64,
    out: Vec<u8>,
    err: Vec<u8>,
}

impl Ctx {
    fn note(&mut self, msg: &str) {
        let _ = writeln!(self.err, "note: {msg}");
    }

    fn key(&self, command: &str, args: &impl Serialize) -> Result<StoreKey> {
        let c = &self.cfg;
        Ok(StoreKey {
            command: command.to_string(),
            params: serde_json::json!({
                "args": serde_json::to_value(args)?,
                "prec_cap": c.prec_cap,
                "exact_max_dim": c.exact_max_dim,
                "exact_max_work": c.exact_max_work,
                "exact_max_modulus": c.exact_max_modulus,
                "deterministic": c.deterministic,
            }),
            engine: "auto".into(),
            precision: c.prec_start,
        })
    }

    /// Serves `compute` from the store when the key is known; otherwise
    /// runs it and appends the result.
    fn stored(
        &mut self,
        command: &str,
        args: &impl Serialize,
        compute: impl FnOnce(&HarnessOptions) -> Result<Vec<OutputRecord>>,
    ) -> Result<(Vec<OutputRecord>, String)> {
        let key = self.key(command, args)?;
        if let Some(payload) = self.store.as_ref().and_then(|s| s.get(&key)) {
            return Ok((from_jsonl(&payload)?, payload));
        }
        let records = compute(&self.opts)?;
        self.computed += records.len() as u64;
        let payload = to_jsonl(&records)?;
        if let Some(s) = &self.store {
            s.append(key, payload.clone())?;
        }
        Ok((records, payload))
    }

    fn emit(&mut self, records: &[OutputRecord], payload: Option<&str>) -> Result<()> {
        let text = match self.cfg.format {
            OutputFormat::Json => match payload {
                Some(p) => p.to_string(),
                None => to_jsonl(records)?,
            },
            OutputFormat::Csv => render_csv(records)?,
            OutputFormat::Table => render_markdown(records),
        };
        self.out.extend_from_slice(text.as_bytes());
        Ok(())
    }
}

fn spec_of(a: &ComputeArgs) -> Result<MatrixSpec> {
    let modulus = match (a.p, a.n) {
        (Some(m), None) | (None, Some(m)) => m,
        (Some(_), Some(_)) => return Err(Error::Param("give either --p or --n, not both".into())),
        (None, None) => return Err(Error::Param("missing --p or --n".into())),
    };
    let (p, n, m) = (modulus, modulus, modulus);
    let (ca, cb, delta) = (a.a.unwrap_or(1), a.b.unwrap_or(1), a.delta.unwrap_or(0));
    let spec = match a.family.as_str() {
        "tan-quad" => MatrixSpec::TanQuad { p, a: ca, b: cb, delta },
        "tan-lin" => MatrixSpec::TanLin { n, a: ca, b: cb, delta },
        "cot-quad" => MatrixSpec::CotQuad { p, a: ca, b: cb },
        "cot-jk" => MatrixSpec::CotJk { p },
        "tan-jk" => MatrixSpec::TanJk { m },
        "tan2-jk" => MatrixSpec::Tan2Jk { m },
        "tan2-quad" => MatrixSpec::Tan2Quad { p, a: ca, b: cb, delta },
        "tan2-lin-sum" => MatrixSpec::Tan2LinSum { n },
        "tan2-lin-diff" => MatrixSpec::Tan2LinDiff { n },
        "cot2-quad" => MatrixSpec::Cot2Quad { p, a: ca, b: cb },
        "leg-tan-quad" => MatrixSpec::LegTanQuad { p, a: ca, b: cb },
        "leg-cot-quad" => MatrixSpec::LegCotQuad { p, a: ca, b: cb },
        "cos-jk" => MatrixSpec::CosJk {
            n,
            delta,
            doubled: a.doubled,
        },
        "sin-jk" => MatrixSpec::SinJk { n, doubled: a.doubled },
        other => return Err(Error::Param(format!("unknown family {other:?}"))),
    };
    Ok(spec)
}

fn cmd_compute(ctx: &mut Ctx, args: &ComputeArgs) -> Result<i32> {
    let spec = spec_of(args)?;
    crate::detcore::build(&spec)?;
    let (records, payload) = ctx.stored("compute", args, |opts| {
        let p = spec.modulus();
        let inv = if is_odd_prime(p) { invariants(p).ok() } else { None };
        let form = predict(&spec, inv.as_deref())?;
        let rec = evaluate_claim("compute", &spec, form.as_ref(), opts)?;
        Ok(vec![OutputRecord::from_verification("verification", &rec)])
    })?;
    ctx.emit(&records, Some(&payload))?;
    Ok(exit_code(&records))
}

fn cmd_verify(ctx: &mut Ctx, args: &VerifyArgs) -> Result<i32> {
    if args.products {
        let (lo, hi) = range_or(&args.p, &args.n, (3, 23))?;
        let a_fixed = args.a;
        let (records, payload) = ctx.stored("verify-products", args, |opts| {
            let prec = opts.ladder.start.max(256);
            let mut items = Vec::new();
            for p in odd_primes(lo, hi) {
                let aa = match a_fixed {
                    Some(a) => vec![a],
                    None => vec![1, least_nonresidue(p) as i64],
                };
                items.extend(aa.into_iter().map(|a| (p, a)));
            }
            let recs = par_map(opts, &items, |&(p, a)| {
                verify_products(p, a, Some(partner_b(p, a)), prec, opts)
            });
            let mut out = Vec::new();
            for r in recs {
                out.extend(r?.iter().map(|v| OutputRecord::from_verification("verification", v)));
            }
            Ok(out)
        })?;
        ctx.emit(&records, Some(&payload))?;
        return Ok(exit_code(&records));
    }
    let id: TheoremId = args.theorem.as_deref().unwrap_or_default().parse()?;
    let (lo, hi) = range_or(&args.p, &args.n, id.default_range())?;
    let pairs = if args.pairs.is_empty() {
        None
    } else {
        Some(args.pairs.iter().map(|s| parse_pair(s)).collect::<Result<Vec<_>>>()?)
    };
    if id == TheoremId::T1_1 && lo > 3 {
        ctx.note("p = 3 omitted: the theorem needs p > 3; include 3 in --p to see its anomaly report");
    }
    let sweep = SweepParams { lo, hi, pairs };
    let (records, payload) = ctx.stored("verify", args, |opts| {
        let recs = verify_theorem(id, &sweep, opts)?;
        Ok(recs
            .iter()
            .map(|r| OutputRecord::from_verification("verification", r))
            .collect())
    })?;
    if records.iter().any(|r| r.excluded) {
        ctx.note("records marked excluded (p = 3) lie outside the hypotheses and do not affect the exit code");
    }
    ctx.emit(&records, Some(&payload))?;
    Ok(exit_code(&records))
}

fn cmd_scan(ctx: &mut Ctx, args: &ScanArgs) -> Result<i32> {
    let id: ConjectureId = args.conjecture.parse()?;
    let (lo, hi) = range_or(&args.p, &args.n, id.default_range())?;
    let (records, payload) = ctx.stored("scan", args, |opts| {
        let rows = scan_conjecture(id, lo, hi, opts)?;
        Ok(rows.iter().map(|r| OutputRecord::from_scan("scan", r)).collect())
    })?;
    ctx.emit(&records, Some(&payload))?;
    Ok(exit_code(&records))
}

fn sequence_records(records: &[OutputRecord]) -> Vec<SequenceRecord> {
    records
        .iter()
        .filter_map(|r| {
            let n = r.params.get("m")?.as_u64()?;
            let value: Option<BigInt> = r.quotient.as_deref().and_then(|q| q.parse().ok());
            let source = match r.engine {
                crate::harness::Engine::Ball => Source::Ball,
                crate::harness::Engine::Exact => Source::Exact,
                crate::harness::Engine::Structural => Source::Structural,
            };
            Some(SequenceRecord {
                n,
                certified: value.is_some(),
                value,
                source,
            })
        })
        .collect()
}

fn cmd_seq(ctx: &mut Ctx, args: &SeqArgs) -> Result<i32> {
    let (records, payload) = match args.which.as_str() {
        "s" => {
            if args.p.is_some() {
                return Err(Error::Param("`seq s` takes --n".into()));
            }
            let (lo, hi) = range_or(&None, &args.n, (1, 11))?;
            let key_args = (&args.which, lo, hi);
            ctx.stored("seq", &key_args, |opts| {
                let rows = scan_conjecture(ConjectureId::C5_2i, lo.max(1), hi, opts)?;
                Ok(rows.iter().map(|r| OutputRecord::from_scan("sequence", r)).collect())
            })?
        }
        "a" => {
            if args.n.is_some() || args.compare.is_some() {
                return Err(Error::Param("`seq a` takes --p only".into()));
            }
            let (lo, hi) = range_or(&args.p, &None, (3, 19))?;
            let primes: Vec<u64> = odd_primes(lo, hi).into_iter().filter(|p| p % 4 == 3).collect();
            if primes.is_empty() {
                return Err(Error::Param(format!("no prime p = 3 (mod 4) in {lo}..{hi}")));
            }
            let key_args = (&args.which, lo, hi);
            ctx.stored("seq", &key_args, |opts| {
                let mut out = Vec::new();
                for p in primes {
                    for row in a_pm_rows(p, opts)? {
                        out.push(OutputRecord::from_scan("a-pm", &row));
                    }
                }
                Ok(out)
            })?
        }
        other => return Err(Error::Param(format!("unknown sequence {other:?} (s or a)"))),
    };
    ctx.emit(&records, Some(&payload))?;
    let mut code = exit_code(&records);
    if let Some(id) = &args.compare {
        let client = OeisClient::new(&ctx.cfg.cache_dir, ctx.cfg.offline);
        let bfile = client.fetch(id, args.fixture.as_deref())?;
        let cmp = compare_oeis(&sequence_records(&records), &bfile.terms)?;
        if bfile.origin == Origin::Builtin {
            ctx.note("compared against the shipped synthetic fixture, not a downloaded b-file");
        }
        let msg = format!(
            "{id}: {} indices compared, mismatches {:?}, gaps {:?}",
            cmp.rows.len(),
            cmp.mismatches,
            cmp.gaps
        );
        ctx.note(&msg);
        if !cmp.all_match() {
            code = 1;
        }
    }
    Ok(code)
}

fn cmd_oeis(ctx: &mut Ctx, args: &OeisArgs) -> Result<i32> {
    let client = OeisClient::new(&ctx.cfg.cache_dir, ctx.cfg.offline);
    let b = client.fetch(&args.id, args.fixture.as_deref())?;
    ctx.note(&format!("{} terms of {} from {:?}", b.terms.len(), b.id, b.origin));
    let mut text = String::new();
    match ctx.cfg.format {
        OutputFormat::Json => {
            for (n, v) in &b.terms {
                text.push_str(&serde_json::to_string(
                    &serde_json::json!({ "n": n, "value": v.to_string() }),
                )?);
                text.push('\n');
            }
        }
        OutputFormat::Csv => {
            text.push_str("n,value\n");
            for (n, v) in &b.terms {
                text.push_str(&format!("{n},{v}\n"));
            }
        }
        OutputFormat::Table => {
            text.push_str(&format!("| n | {} |\n|---|---|\n", b.id));
            for (n, v) in &b.terms {
                text.push_str(&format!("| {n} | {v} |\n"));
            }
        }
    }
    ctx.out.extend_from_slice(text.as_bytes());
    Ok(0)
}

/// Reads either plain record JSONL or a store file.
pub fn read_records(text: &str) -> Result<Vec<OutputRecord>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        if let Ok(entry) = serde_json::from_str::<StoreEntry>(line) {
            out.extend(from_jsonl(&entry.payload)?);
            continue;
        }
        let rec = serde_json::from_str(line).map_err(|e| Error::Parse(format!("input line {}: {e}", i + 1)))?;
        out.push(rec);
    }
    Ok(out)
}

fn cmd_report(ctx: &mut Ctx, args: &ReportArgs) -> Result<i32> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| Error::Io(format!("reading {}: {e}", args.input.display())))?;
    let records = read_records(&text)?;
    ctx.emit(&records, None)?;
    Ok(0)
}

fn configure(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = RunConfig::load(cli.config.as_deref())?;
    if let Some(d) = &cli.cache_dir {
        cfg.cache_dir = d.clone();
    }
    if let Some(j) = cli.jobs {
        cfg.jobs = j;
    }
    if let Some(p) = cli.prec {
        cfg.prec_start = p;
        cfg.prec_cap = cfg.prec_cap.max(p);
    }
    if let Some(c) = cli.prec_cap {
        cfg.prec_cap = c;
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if cli.json {
        cfg.format = OutputFormat::Json;
    }
    cfg.offline |= cli.offline;
    cfg.deterministic |= cli.deterministic;
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cli: &Cli, out: &mut Vec<u8>, err: &mut Vec<u8>) -> Result<i32> {
    let cfg = configure(cli)?;
    let uses_store = matches!(
        cli.command,
        Command::Compute(_) | Command::Verify(_) | Command::Scan(_) | Command::Seq(_)
    );
    let store = match (&cli.store, cli.no_store || !uses_store) {
        (_, true) => None,
        (Some(path), false) => Some(Store::open(path)?),
        (None, false) => Some(Store::open(&cfg.cache_dir.join("store.jsonl"))?),
    };
    let opts = cfg.harness_options()?;
    let mut ctx = Ctx {
        cfg,
        opts,
        store,
        computed: 0,
        out: Vec::new(),
        err: Vec::new(),
    };
    let result = match &cli.command {
        Command::Compute(a) => cmd_compute(&mut ctx, a),
        Command::Verify(a) => cmd_verify(&mut ctx, a),
        Command::Scan(a) => cmd_scan(&mut ctx, a),
        Command::Seq(a) => cmd_seq(&mut ctx, a),
        Command::Oeis(a) => cmd_oeis(&mut ctx, a),
        Command::Report(a) => cmd_report(&mut ctx, a),
    };
    if cli.stats {
        let s = ctx.store.as_ref().map(|s| s.stats()).unwrap_or_default();
        let _ = writeln!(
            ctx.err,
            "store: hits={} misses={} appended={} computed={}",
            s.hits, s.misses, s.appended, ctx.computed
        );
    }
    out.append(&mut ctx.out);
    err.append(&mut ctx.err);
    result
}

/// Runs the command line `args` (program name first), writing to the given
/// streams, and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let result = execute(&cli, &mut o, &mut e);
    let _ = out.write_all(&o);
    let _ = err.write_all(&e);
    match result {
        Ok(code) => code,
        Err(x) => {
            let _ = writeln!(err, "error: {x}");
            error_code(&x)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("5..37").unwrap(), (5, 37));
        assert_eq!(parse_range("3..=15").unwrap(), (3, 15));
        assert_eq!(parse_range("7").unwrap(), (7, 7));
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("a..b").is_err());
        assert_eq!(parse_pair("2,-3").unwrap(), (2, -3));
        assert!(parse_pair("2").is_err());
    }

    #[test]
    fn families_parse() {
        let a = ComputeArgs {
            family: "cot-jk".into(),
            p: Some(7),
            n: None,
            a: None,
            b: None,
            delta: None,
            doubled: false,
        };
        assert_eq!(spec_of(&a).unwrap(), MatrixSpec::CotJk { p: 7 });
        let a = ComputeArgs {
            family: "nope".into(),
            ..a
        };
        assert!(matches!(spec_of(&a), Err(Error::Param(_))));
    }
}
