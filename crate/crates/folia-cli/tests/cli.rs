//! CLI behavior beyond the acceptance criteria: determinism, structured
//! output shape, quotient round-trips.

use std::path::{Path, PathBuf};
use std::process::Output;

fn corpus_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_folia"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_accepts_valid_files() {
    let file = corpus_file("bianchi_ix_su2.alg");
    let output = run(&["check", path_str(&file)]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("ok: bianchi-ix-su2"));
}

#[test]
fn analyze_output_is_byte_identical_across_runs() {
    let file = corpus_file("sl2r_cartan_killing.alg");
    for format in ["text", "structured"] {
        let a = run(&["analyze", path_str(&file), "--format", format]);
        let b = run(&["analyze", path_str(&file), "--format", format]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{format} output must be stable");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn structured_output_is_valid_json_with_expected_keys() {
    let file = corpus_file("su2_ideal_totally_geodesic.alg");
    let output = run(&["analyze", path_str(&file), "--format", "structured"]);
    assert_eq!(output.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(value["algebra"]["dim"], 6);
    assert_eq!(value["classification"]["radical_dim"], 3);
    assert_eq!(value["foliation"]["riemannian"], true);
    assert_eq!(value["foliation"]["totally_geodesic"], true);
    assert_eq!(value["quotient"]["flat"], true);
    assert_eq!(value["quotient"]["projected"], false);
    assert_eq!(value["curvature"]["flat"], false);
}

#[test]
fn quotient_output_reparses_and_analyzes() {
    let file = corpus_file("su2_sol_quotient_alpha2.alg");
    let output = run(&["quotient", path_str(&file)]);
    assert_eq!(output.status.code(), Some(0));
    let text = String::from_utf8(output.stdout).unwrap();
    let parsed = folia::parse_algebra(&text).unwrap();
    assert_eq!(parsed.name, "su2-sol-quotient-alpha2-quotient");
    assert_eq!(parsed.dim(), 3);
    // The emitted quotient is itself a valid input.
    let analysis = folia::analyze::analyze(&parsed).unwrap();
    assert!(analysis.flags.is_solvable);
}

#[test]
fn quotient_requires_an_ideal() {
    let file = corpus_file("su2_codim_four.alg");
    let output = run(&["quotient", path_str(&file)]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("not an ideal"));
}

#[test]
fn curvature_subcommand_prints_the_summary() {
    let file = corpus_file("h2_rho2.alg");
    let output = run(&["curvature", path_str(&file)]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("curvature: flat=false constant=-4"));
    assert!(stdout.contains("K(X, Y) = -4"));
}

#[test]
fn analyze_flags_expectation_mismatches_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wrong.alg");
    std::fs::write(
        &path,
        "algebra \"wrong\"\ndim 2\nbasis X Y\nexpect abelian = false\n",
    )
    .unwrap();
    let output = run(&["analyze", path_str(&path)]);
    assert_eq!(output.status.code(), Some(1));
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("expect abelian = false, computed true"));
}

#[test]
fn missing_files_and_parse_errors_exit_two() {
    let output = run(&["check", "/nonexistent/file.alg"]);
    assert_eq!(output.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("syntax.alg");
    std::fs::write(&path, "algebra \"x\"\ndim 1\nbasis X\nbracket [X,X] = X\n").unwrap();
    let output = run(&["check", path_str(&path)]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("line 4"));
}

#[test]
fn corpus_jobs_flag_gives_identical_output() {
    let dir = corpus_file("");
    let sequential = run(&["corpus", path_str(&dir)]);
    let parallel = run(&["corpus", path_str(&dir), "--jobs", "4"]);
    assert_eq!(sequential.status.code(), Some(0));
    assert_eq!(sequential.stdout, parallel.stdout);
}
