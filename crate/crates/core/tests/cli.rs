use std::process::Command;

use hierarchy_one::cli::{run, BatchSummary};
use hierarchy_one::Report;

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("hierarchy-one").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden_path() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/golden.json").to_string()
}

#[test]
fn decide_exit_codes() {
    let (code, out, _) = cli(&["decide", "--alphabet", "ab", "--basis", "st", "--level", "bpol", "(ab)*"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("NOT a member"));
    assert_eq!(cli(&["decide", "--alphabet", "ab", "--basis", "st", "--level", "bpol", "--plus", "(ab)*"]).0, 0);
    assert_eq!(cli(&["decide", "--alphabet", "a", "--basis", "mod", "--level", "bpol", "(aa)*"]).0, 0);
    assert_eq!(cli(&["decide", "--alphabet", "a", "--basis", "st", "--level", "bpol", "(aa)*"]).0, 1);
}

#[test]
fn witness_is_printed_on_request() {
    let (code, out, _) = cli(&["decide", "--alphabet", "ab", "--witness", "(ab)*"]);
    assert_eq!(code, 1);
    assert!(out.contains("witness:"), "{out}");
}

#[test]
fn unsupported_pairs_and_bad_input_exit_2() {
    let (code, _, err) = cli(&["pairs", "--alphabet", "a", "--basis", "gr", "(aa)*"]);
    assert_eq!(code, 2);
    assert!(err.contains("GR-pairs not computable"), "{err}");
    assert_eq!(cli(&["decide", "--alphabet", "ab", "(a"]).0, 2);
    assert_eq!(cli(&["decide", "a*"]).0, 2, "patterns need an alphabet");
    assert_eq!(cli(&["decide", "--alphabet", "a", "--level", "pol3", "a*"]).0, 2);
}

#[test]
fn decide_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let code = cli(&["decide", "--alphabet", "ab", "--json", path.to_str().unwrap(), "(ab)*"]).0;
    assert_eq!(code, 1);
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(!report.member);
    assert_eq!(report.monoid_size, 6);
    assert!(report.witness.is_some());
}

#[test]
fn dfa_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("analysis.json");
    assert_eq!(cli(&["analyze", "--alphabet", "ab", "--json", json.to_str().unwrap(), "(ab)*"]).0, 0);
    let analysis: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let dfa = dir.path().join("ab.json");
    std::fs::write(&dfa, serde_json::to_string(&analysis["dfa"]).unwrap()).unwrap();
    assert_eq!(cli(&["decide", "--plus", dfa.to_str().unwrap()]).0, 0);
}

#[test]
fn batch_on_golden_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("summary.json");
    let (code, out, _) = cli(&["batch", "--jobs", "2", "--json", json.to_str().unwrap(), &golden_path()]);
    assert_eq!(code, 0, "{out}");
    let summary: BatchSummary = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(summary.failed + summary.errors, 0);
    assert_eq!(summary.passed, summary.total);
}

#[test]
fn batch_reports_mismatches_and_handles_empty_manifests() {
    let dir = tempfile::tempdir().unwrap();
    let wrong = dir.path().join("wrong.json");
    std::fs::write(
        &wrong,
        r#"{"cases":[{"input":"(ab)*","alphabet":"ab","basis":"st","level":"bpol","expect":true}]}"#,
    )
    .unwrap();
    assert_eq!(cli(&["batch", wrong.to_str().unwrap()]).0, 2);
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, r#"{"cases":[]}"#).unwrap();
    assert_eq!(cli(&["batch", empty.to_str().unwrap()]).0, 0);
}

#[test]
fn analyze_and_pairs_output() {
    let (code, out, _) = cli(&["analyze", "--alphabet", "a", "a(aa)*"]);
    assert_eq!(code, 0);
    assert!(out.contains("2 elements"), "{out}");
    let (code, out, _) = cli(&["pairs", "--alphabet", "a", "--basis", "mod", "(aa)*"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("2 pairs over 2 elements"), "{out}");
}

#[test]
fn cover_writes_entry_automata() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("cover");
    let (code, out, _) = cli(&["cover", "--alphabet", "a", "--with", "(aa)*", "--out-dir", out_dir.to_str().unwrap(), "a*"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("2 entries, certified"), "{out}");
    assert!(out_dir.join("entry-0.json").exists() && out_dir.join("entry-1.json").exists());
    // a non-group language L is refused
    assert_eq!(cli(&["cover", "--alphabet", "a", "--with", "aa*", "--out-dir", out_dir.to_str().unwrap(), "a*"]).0, 2);
}

#[test]
fn decompose_verifies() {
    let (code, out, _) = cli(&["decompose", "--alphabet", "ab", "(ab)*", "abababababababababababababababababababab"]);
    assert_eq!(code, 0);
    assert!(out.contains("verified: true"), "{out}");
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_hierarchy-one"))
        .args(["decide", "--alphabet", "ab", "--basis", "st", "--level", "pol", "--plus", "a"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_hierarchy-one")).arg("--help").output().unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).contains("batch"));
}
