//! Drives the command line in-process: a cold run computes, a warm run is
//! served from the store.

use tandet::cli::run_with;

fn main() {
    let dir = std::env::temp_dir().join(format!("tandet-example-{}", std::process::id()));
    let store = dir.join("store.jsonl");
    let args = [
        "tandet",
        "--store",
        store.to_str().unwrap(),
        "--stats",
        "--json",
        "--deterministic",
        "scan",
        "--conjecture",
        "5.1",
        "--p",
        "7..23",
    ];
    for run in ["cold", "warm"] {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(args, &mut out, &mut err);
        println!(
            "{run}: exit {code}, {} bytes, {}",
            out.len(),
            String::from_utf8_lossy(&err).trim()
        );
    }
    let _ = std::fs::remove_dir_all(dir);
}
