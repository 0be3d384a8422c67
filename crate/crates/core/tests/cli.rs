use std::path::Path;
use std::process::{Command, Output};
use tandet::cli::from_jsonl;

fn tandet(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tandet"))
        .args(args)
        .env("TANDET_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cases: &[(&[&str], i32)] = &[
        (
            &[
                "compute", "--family", "tan-quad", "--p", "7", "--a", "1", "--b", "1", "--delta", "0",
            ],
            0,
        ),
        (
            &["compute", "--family", "cot-quad", "--p", "5", "--a", "1", "--b", "1"],
            3,
        ),
        (&["compute", "--family", "tan-quad", "--p", "9"], 3),
        (&["compute", "--family", "nonsense", "--p", "7"], 3),
        (&["verify", "--theorem", "9.9"], 3),
        (&["verify", "--theorem", "1.2", "--n", "3..15"], 0),
        (&["verify", "--products", "--p", "3..3"], 1),
        (&["verify", "--products", "--p", "5..13"], 0),
        (&["scan", "--conjecture", "5.2ii", "--n", "3..4"], 1),
        (&["scan", "--conjecture", "5.0"], 3),
        (&["seq", "q"], 3),
        (&["frobnicate"], 3),
        (&["--prec", "16", "seq", "s", "--n", "1..3"], 3),
        (&["oeis", "X123"], 3),
        (&["oeis", "A000045", "--offline"], 4),
        (&["oeis", "A277445", "--offline"], 0),
    ];
    for (args, want) in cases {
        let o = tandet(d, args);
        assert_eq!(code(&o), *want, "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn undecided_without_exact_mode() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tandet.conf");
    std::fs::write(
        &cfg,
        "# ball arithmetic only\nexact_max_dim = 0\nexact_max_work = 0\nexact_max_modulus = 0\nprec_cap = 128\n",
    )
    .unwrap();
    let args = ["--config", cfg.to_str().unwrap(), "--no-store", "--json"];
    // An exact zero with no structural certificate: a ball can only be consistent with it.
    let o = tandet(
        dir.path(),
        &[
            &args[..],
            &[
                "compute", "--family", "tan-quad", "--p", "7", "--a", "1", "--b", "2", "--delta", "1",
            ],
        ]
        .concat(),
    );
    assert_eq!(code(&o), 2, "{}", stderr(&o));
    let recs = from_jsonl(&String::from_utf8_lossy(&o.stdout)).unwrap();
    assert_eq!(recs[0].verdict, "consistent-zero");
    assert!(!recs[0].exact.present);
}

#[test]
fn store_replay_is_a_cache_hit() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--stats", "--json", "scan", "--conjecture", "5.1", "--p", "7..23"];
    let cold = tandet(dir.path(), &args);
    assert_eq!(code(&cold), 0);
    assert!(
        stderr(&cold).contains("hits=0 misses=1 appended=1 computed=4"),
        "{}",
        stderr(&cold)
    );
    let warm = tandet(dir.path(), &args);
    assert!(
        stderr(&warm).contains("hits=1 misses=0 appended=0 computed=0"),
        "{}",
        stderr(&warm)
    );
    assert_eq!(cold.stdout, warm.stdout);
    assert!(dir.path().join("store.jsonl").exists());

    // A different precision is a different key.
    let other = tandet(
        dir.path(),
        &[
            "--prec",
            "96",
            "--stats",
            "--json",
            "scan",
            "--conjecture",
            "5.1",
            "--p",
            "7..23",
        ],
    );
    assert!(stderr(&other).contains("misses=1"), "{}", stderr(&other));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--no-store",
        "--deterministic",
        "--json",
        "--jobs",
        "3",
        "verify",
        "--theorem",
        "1.1",
        "--p",
        "5..13",
    ];
    let a = tandet(dir.path(), &args);
    let b = tandet(
        dir.path(),
        &[
            "--no-store",
            "--deterministic",
            "--json",
            "--jobs",
            "1",
            "verify",
            "--theorem",
            "1.1",
            "--p",
            "5..13",
        ],
    );
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(stderr(&a).contains("p = 3 omitted"));
    for r in from_jsonl(&String::from_utf8_lossy(&a.stdout)).unwrap() {
        assert_eq!(r.runtime_ms, 0);
    }
}

#[test]
fn report_renders_a_store_as_csv() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&tandet(d, &["--deterministic", "seq", "a", "--p", "3..11"])), 0);
    let store = d.join("store.jsonl");
    let a = tandet(d, &["report", "--input", store.to_str().unwrap(), "--format", "csv"]);
    let b = tandet(d, &["report", "--input", store.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 6);
    assert!(text.contains(",1728,") && text.contains(",-373,"));

    let md = tandet(d, &["report", "--input", store.to_str().unwrap(), "--format", "table"]);
    assert!(String::from_utf8_lossy(&md.stdout).contains("| 11 | 1728 | -373 |"));

    let bad = d.join("bad.jsonl");
    std::fs::write(&bad, "{\"nope\": 1}\n").unwrap();
    let o = tandet(d, &["report", "--input", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("line 1"));
}

#[test]
fn sequence_table_and_offline_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let o = tandet(
        dir.path(),
        &[
            "--offline",
            "--format",
            "csv",
            "seq",
            "s",
            "--n",
            "1..11",
            "--compare",
            "A277445",
        ],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = String::from_utf8_lossy(&o.stdout);
    let values: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(11).unwrap()).collect();
    assert_eq!(
        values,
        ["1", "-2", "4", "4", "48", "-160", "32", "2176", "6912", "0", "273408"]
    );
    assert!(stderr(&o).contains("mismatches []"));

    let wrong = dir.path().join("wrong.txt");
    std::fs::write(&wrong, "1 1\n2 2\n").unwrap();
    let o = tandet(
        dir.path(),
        &[
            "--offline",
            "seq",
            "s",
            "--n",
            "1..2",
            "--compare",
            "A277445",
            "--fixture",
            wrong.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 1, "{}", stderr(&o));
}

#[test]
fn cache_location_precedence() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let cached = |d: &Path, body: &str| {
        std::fs::create_dir_all(d.join("oeis")).unwrap();
        std::fs::write(d.join("oeis").join("b000045.txt"), body).unwrap();
    };
    cached(env_dir.path(), "0 0\n1 1\n");
    cached(flag_dir.path(), "0 0\n1 1\n2 1\n3 2\n");
    let o = tandet(env_dir.path(), &["--offline", "--json", "oeis", "A000045"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 2);
    let o = tandet(
        env_dir.path(),
        &[
            "--offline",
            "--json",
            "--cache-dir",
            flag_dir.path().to_str().unwrap(),
            "oeis",
            "A000045",
        ],
    );
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 4);

    let cfg = env_dir.path().join("c.conf");
    std::fs::write(&cfg, format!("cache_dir = {}\n", flag_dir.path().display())).unwrap();
    // The environment variable beats the config file.
    let o = tandet(
        env_dir.path(),
        &[
            "--offline",
            "--json",
            "--config",
            cfg.to_str().unwrap(),
            "oeis",
            "A000045",
        ],
    );
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 2);

    cached(env_dir.path(), "0 0\n1 x\n");
    let o = tandet(env_dir.path(), &["--offline", "oeis", "A000045"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}
