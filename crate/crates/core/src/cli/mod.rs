//! Command-line front end: configuration, result store, reports and the
//! OEIS client.

pub mod commands;
pub mod config;
pub mod oeis;
pub mod report;
pub mod store;

pub use commands::{error_code, parse_range, read_records, run_with};
pub use config::{OutputFormat, RunConfig, CACHE_DIR_ENV};
pub use oeis::{validate_id, BFile, OeisClient, Origin};
pub use report::{exit_code, from_jsonl, render_csv, render_markdown, to_jsonl, OutputRecord};
pub use store::{Store, StoreEntry, StoreKey, StoreStats};

use std::ffi::OsString;

/// Runs the command line against the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
