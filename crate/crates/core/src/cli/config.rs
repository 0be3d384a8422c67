use crate::detcore::ExactBudget;
use crate::error::{Error, Result};
use crate::harness::HarnessOptions;
use crate::recognize::PrecisionLadder;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Environment variable that overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "TANDET_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<OutputFormat> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "table" | "markdown" | "md" => Ok(OutputFormat::Table),
            _ => Err(Error::Param(format!("unknown output format {s:?} (json, csv, table)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub prec_start: u32,
    pub prec_cap: u32,
    pub exact_max_dim: usize,
    pub exact_max_work: u64,
    pub exact_max_modulus: u64,
    pub jobs: usize,
    pub cache_dir: PathBuf,
    pub offline: bool,
    pub format: OutputFormat,
    pub deterministic: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let h = HarnessOptions::default();
        let cache_dir = std::env::var_os("HOME")
            .map(|home| PathBuf::from(home).join(".cache").join("tandet"))
            .unwrap_or_else(|| PathBuf::from(".tandet-cache"));
        RunConfig {
            prec_start: h.ladder.start,
            prec_cap: h.ladder.cap,
            exact_max_dim: h.exact_budget.max_dim,
            exact_max_work: h.exact_budget.max_work,
            exact_max_modulus: h.exact_max_modulus,
            jobs: h.jobs,
            cache_dir,
            offline: false,
            format: OutputFormat::Table,
            deterministic: false,
        }
    }
}

fn parse_value<T: FromStr>(key: &str, v: &str, line: usize) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Parse(format!("config line {line}: bad value {v:?} for {key}")))
}

fn parse_bool(key: &str, v: &str, line: usize) -> Result<bool> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(Error::Parse(format!("config line {line}: bad boolean {v:?} for {key}"))),
    }
}

impl RunConfig {
    /// Applies flat `key = value` lines on top of `self`. `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::Parse(format!(
                    "config line {n}: expected key=value, got {raw:?}"
                )));
            };
            let (k, v) = (k.trim(), v.trim());
            match k {
                "prec_start" => self.prec_start = parse_value(k, v, n)?,
                "prec_cap" => self.prec_cap = parse_value(k, v, n)?,
                "exact_max_dim" => self.exact_max_dim = parse_value(k, v, n)?,
                "exact_max_work" => self.exact_max_work = parse_value(k, v, n)?,
                "exact_max_modulus" => self.exact_max_modulus = parse_value(k, v, n)?,
                "jobs" => self.jobs = parse_value(k, v, n)?,
                "cache_dir" => self.cache_dir = PathBuf::from(v),
                "offline" => self.offline = parse_bool(k, v, n)?,
                "format" => self.format = v.parse()?,
                "deterministic" => self.deterministic = parse_bool(k, v, n)?,
                _ => return Err(Error::Parse(format!("config line {n}: unknown key {k:?}"))),
            }
        }
        Ok(())
    }

    /// Defaults, then the config file if any, then `TANDET_CACHE_DIR`.
    /// Command-line flags are applied afterwards by the caller.
    pub fn load(path: Option<&Path>) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(p) = path {
            let text =
                std::fs::read_to_string(p).map_err(|e| Error::Io(format!("reading config {}: {e}", p.display())))?;
            cfg.apply_text(&text)?;
        }
        if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
            cfg.cache_dir = PathBuf::from(dir);
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        PrecisionLadder::new(self.prec_start, self.prec_cap)?;
        if self.jobs == 0 {
            return Err(Error::Param("jobs must be at least 1".into()));
        }
        Ok(())
    }

    pub fn harness_options(&self) -> Result<HarnessOptions> {
        self.validate()?;
        Ok(HarnessOptions {
            ladder: PrecisionLadder::new(self.prec_start, self.prec_cap)?,
            exact_budget: ExactBudget {
                max_dim: self.exact_max_dim,
                max_work: self.exact_max_work,
            },
            exact_max_modulus: self.exact_max_modulus,
            jobs: self.jobs,
            deterministic: self.deterministic,
        })
    }
}
