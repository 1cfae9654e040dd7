use std::io::Write;
use std::process::{Command, Output, Stdio};

use dcsos::cli::{run_bench, Algorithm, Command as Cmd, CorpusParams, RunConfig};

fn dcsos(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcsos"))
        .args(args)
        .env_remove("DCSOS_FORMAT")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn improved_parity_example_passes() {
    let o = dcsos(&["decompose", "--algo", "dsos-parity-improved", "-2*x1^3*x2^5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("component degree: 8"), "{text}");
    assert!(text.contains("audit:            PASS"));
}

#[test]
fn direct_spectral_reports_eigenvalues() {
    let o = dcsos(&["decompose", "--algo", "dsos-spectral-direct", "2+2*x1+2*x2^3+2*x1^2*x2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("lambda+ = 3, lambda- = -1"));
}

#[test]
fn zero_gives_empty_decomposition() {
    let o = dcsos(&["decompose", "--algo", "dcsos-minimal", "0"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("positive (0 terms"));
    assert!(text.contains("negative (0 terms"));
    assert!(text.contains("PASS"));
}

#[test]
fn parse_errors_exit_nonzero() {
    let o = dcsos(&["decompose", "x1*/x2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    let o = dcsos(&["decompose", "--algo", "no-such-algo", "x1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dcsos"))
        .args(["decompose", "--algo", "dcsos-parity"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"3*x1*x2^2\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("input:      3*x1*x2^2"));
}

#[test]
fn json_file_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    for algo in Algorithm::ALL {
        let path = dir.path().join(format!("{}.json", algo.id()));
        let path_s = path.to_str().unwrap();
        let o = dcsos(&[
            "--format", "json", "--out", path_s, "decompose", "--algo", algo.id(), "x1^3*x2 - 2*x2^2 + 1/2",
        ]);
        assert!(o.status.success(), "{}", algo.id());
        let v = dcsos(&["verify", path_s]);
        assert!(v.status.success(), "{}", algo.id());
        assert!(stdout(&v).contains("stored report: identical"), "{}: {}", algo.id(), stdout(&v));
    }
}

#[test]
fn tampered_json_fails_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let path_s = path.to_str().unwrap();
    let o = dcsos(&["--format", "json", "--out", path_s, "decompose", "--algo", "dcsos-minimal", "x1*x2"]);
    assert!(o.status.success());
    let mut doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    doc["positive"][0]["weight"] = serde_json::Value::String("1/3".into());
    std::fs::write(&path, doc.to_string()).unwrap();
    let v = dcsos(&["verify", path_s]);
    assert_eq!(v.status.code(), Some(1));
}

#[test]
fn format_env_var_selects_json() {
    let o = Command::new(env!("CARGO_BIN_EXE_dcsos"))
        .args(["decompose", "x1^2"])
        .env("DCSOS_FORMAT", "json")
        .output()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["input"], "x1^2");
    assert_eq!(doc["positive"][0]["weight"], "1/1");
}

#[test]
fn bench_without_timing_is_byte_identical() {
    let args = ["bench", "--count", "15", "--seed", "3", "--no-timing", "--max-degree", "5"];
    let a = dcsos(&args);
    let b = dcsos(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("wall ms"));
}

#[test]
fn bench_columns_on_fixed_corpus() {
    let cfg = RunConfig {
        command: Cmd::Bench,
        corpus: CorpusParams {
            count: 20,
            min_nvars: 3,
            max_nvars: 3,
            min_degree: 6,
            max_degree: 6,
            ..CorpusParams::default()
        },
        ..RunConfig::default()
    };
    let (corpus, rows) = run_bench(&cfg);
    let row = |a: Algorithm| rows.iter().find(|r| r.algorithm == a).unwrap();
    for r in &rows {
        assert_eq!(r.audit_passed, 20, "{}", r.algorithm.id());
    }
    assert_eq!(row(Algorithm::DsosParityImproved).minimal_degree, 20);
    assert_eq!(row(Algorithm::DsosSpectralMinimal).minimal_degree, 20);
    let direct = row(Algorithm::DsosSpectralDirect);
    assert_eq!((direct.total_squares, direct.max_squares), (40, 2));
    let terms: usize = corpus.iter().map(|p| p.num_terms()).sum();
    assert_eq!(row(Algorithm::DsosParity).total_squares, 3 * terms);
}
