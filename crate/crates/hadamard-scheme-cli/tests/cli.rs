//! End-to-end tests of the `hadamard-scheme` binary: exit codes, report
//! formats, and the failure paths that must stay loud.
//!
//! Exit code contract: 0 = every check passed, 1 = at least one check
//! failed, 2 = the run could not be carried out at all.

use std::path::PathBuf;
use std::process::{Command, Output};

use hadamard_scheme::report::{Report, Status};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hadamard-scheme"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn shipped_instance() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../hadamard-scheme/tests/data/scheme_255.txt")
}

/// Writes `contents` to a unique temp file and returns its path.
fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("hadamard-scheme-test-{name}"));
    std::fs::write(&path, contents).expect("temp file writes");
    path
}

// ---------------------------------------------------------------- params --

#[test]
fn params_symbolic_run_passes() {
    let out = run(&["params", "--symbolic"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("0 failed"), "{text}");
    assert!(text.contains("spectral-consistency"), "{text}");
}

#[test]
fn params_specializes_at_a_point() {
    let out = run(&["params", "--q", "4", "--m", "2"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("specialization"), "{text}");
    assert!(text.contains("n = 255"), "{text}");
}

#[test]
fn params_requires_a_point_or_symbolic_mode() {
    let out = run(&["params"]);
    assert_eq!(code(&out), 2, "stdout: {}", stdout(&out));
}

#[test]
fn params_rejects_a_field_size_that_is_not_a_power_of_two() {
    let out = run(&["params", "--q", "3", "--m", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("power of two"), "{}", stderr(&out));
}

// -------------------------------------------------------------- hadamard --

#[test]
fn hadamard_exact_families_pass_at_the_smallest_point() {
    for family in ["I", "II"] {
        let out = run(&["hadamard", "--family", family, "--q", "4", "--m", "2"]);
        assert_eq!(code(&out), 0, "family {family}: {}", stderr(&out));
        let text = stdout(&out);
        assert!(text.contains("generator-annihilation"), "{text}");
        assert!(text.contains("weight-recovery"), "{text}");
        assert!(text.contains("0 failed"), "{text}");
    }
}

#[test]
fn hadamard_symbolic_run_annihilates_every_generator() {
    let out = run(&["hadamard", "--family", "II", "--symbolic"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("generators = 44"), "{text}");
}

#[test]
fn hadamard_family_six_checks_both_numeric_branches() {
    let out = run(&["hadamard", "--family", "VI", "--q", "4", "--m", "2"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("unimodularity[top]"), "{text}");
    assert!(text.contains("unimodularity[bottom]"), "{text}");
    assert!(text.contains("gram-identity[bottom]"), "{text}");
}

#[test]
fn hadamard_family_six_is_gated_to_the_constructed_point() {
    let out = run(&["hadamard", "--family", "VI", "--q", "8", "--m", "2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("(q, m) = (4, 2)"), "{}", stderr(&out));
}

#[test]
fn hadamard_rejects_exact_mode_for_family_six() {
    let out = run(&[
        "hadamard", "--family", "VI", "--q", "4", "--m", "2", "--exact",
    ]);
    assert_eq!(code(&out), 2, "stdout: {}", stdout(&out));
}

// ---------------------------------------------------------------- nomura --

#[test]
fn nomura_report_round_trips_through_json() {
    let args = ["nomura", "--q", "4", "--m", "2", "--output", "json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0, "stderr: {}", stderr(&first));

    let a = Report::from_json(&stdout(&first)).expect("valid report JSON");
    let b = Report::from_json(&stdout(&second)).expect("valid report JSON");
    assert!(a.passed());
    assert_eq!(a.counts(), (7, 0, 0));
    assert!(a
        .checks
        .iter()
        .all(|c| matches!(c.status, Status::Pass)));

    // Identical runs must agree byte-for-byte once timing is zeroed.
    let a_json = a.normalized().to_json();
    let b_json = b.normalized().to_json();
    assert_eq!(a_json, b_json);

    // And the normalized form must itself round-trip.
    let again = Report::from_json(&a_json).expect("round-trips");
    assert_eq!(again.normalized().to_json(), a_json);
}

#[test]
fn nomura_grid_covers_every_admissible_point() {
    let out = run(&["nomura", "--grid"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("(64,2)"), "{text}");
    assert!(text.contains("47 passed, 0 failed"), "{text}");
}

#[test]
fn nomura_rejects_family_six() {
    let out = run(&["nomura", "--family", "VI", "--q", "4", "--m", "2"]);
    assert_eq!(code(&out), 2, "stdout: {}", stdout(&out));
}

// ----------------------------------------------------------------- dense --

fn dense_args(scheme: &str, extra: &[&str]) -> Vec<String> {
    let mut args: Vec<String> = [
        "dense", "--scheme", scheme, "--family", "II", "--q", "4", "--m", "2",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    args.extend(extra.iter().map(|s| s.to_string()));
    args
}

#[test]
fn dense_verifies_the_shipped_instance() {
    let scheme = shipped_instance();
    let args = dense_args(scheme.to_str().unwrap(), &[]);
    let out = bin().args(&args).output().expect("binary runs");
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("dense-gram"), "{text}");
    assert!(text.contains("triangle-cross-check"), "{text}");
    assert!(text.contains("sampled-inner-products"), "{text}");
    assert!(text.contains("0 failed"), "{text}");
}

#[test]
fn dense_zero_tolerance_is_satisfiable_on_the_fixed_point_grid() {
    // The measured defects land exactly on zero in 256-bit fixed point, so
    // even a zero tolerance passes; anything the arithmetic cannot null out
    // would fail here loudly.
    let scheme = shipped_instance();
    let args = dense_args(scheme.to_str().unwrap(), &["--tol", "0"]);
    let out = bin().args(&args).output().expect("binary runs");
    assert_eq!(code(&out), 0, "stdout: {}", stdout(&out));
}

#[test]
fn dense_rejects_a_negative_tolerance() {
    let scheme = shipped_instance();
    let args = dense_args(scheme.to_str().unwrap(), &["--tol", "-1/2"]);
    let out = bin().args(&args).output().expect("binary runs");
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("negative tolerance"), "{}", stderr(&out));
}

#[test]
fn dense_rejects_a_truncated_instance_file() {
    let full = std::fs::read_to_string(shipped_instance()).expect("shipped file");
    let truncated: String = full.lines().take(40).collect::<Vec<_>>().join("\n");
    let path = temp_file("truncated.txt", &truncated);
    let args = dense_args(path.to_str().unwrap(), &[]);
    let out = bin().args(&args).output().expect("binary runs");
    assert_eq!(code(&out), 2, "stdout: {}", stdout(&out));
    assert!(stderr(&out).contains("matrix rows"), "{}", stderr(&out));
}

#[test]
fn dense_flags_a_relabeled_instance_as_a_failed_check() {
    // Swapping relation labels 3 and 4 keeps the file well-formed (it is the
    // same scheme, relabeled) but its intersection numbers no longer match
    // the canonical ordering, so validation must fail -- exit 1, not 2.
    let full = std::fs::read_to_string(shipped_instance()).expect("shipped file");
    let mut lines = full.lines();
    let header = lines.next().expect("header").to_string();
    let mut relabeled = vec![header];
    for line in lines {
        let row: Vec<&str> = line
            .split_whitespace()
            .map(|tok| match tok {
                "3" => "4",
                "4" => "3",
                other => other,
            })
            .collect();
        relabeled.push(row.join(" "));
    }
    let path = temp_file("relabeled.txt", &relabeled.join("\n"));
    let args = dense_args(path.to_str().unwrap(), &[]);
    let out = bin().args(&args).output().expect("binary runs");
    assert_eq!(code(&out), 1, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("[FAIL] instance-validation"), "{text}");
}

#[test]
fn dense_seeded_runs_are_deterministic() {
    let scheme = shipped_instance();
    let args = dense_args(
        scheme.to_str().unwrap(),
        &["--seed", "7", "--output", "json"],
    );
    let first = bin().args(&args).output().expect("binary runs");
    let second = bin().args(&args).output().expect("binary runs");
    assert_eq!(code(&first), 0, "stderr: {}", stderr(&first));
    let a = Report::from_json(&stdout(&first)).expect("valid report JSON");
    let b = Report::from_json(&stdout(&second)).expect("valid report JSON");
    assert_eq!(
        a.normalized().to_json(),
        b.normalized().to_json()
    );
}

// ----------------------------------------------------------------- sturm --

#[test]
fn sturm_reference_polynomial_has_one_root_in_the_window() {
    let out = run(&["sturm", "--degree9"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("degree = 9"), "{text}");
    assert!(text.contains("roots = 1"), "{text}");
}

#[test]
fn sturm_counts_roots_of_a_quadratic() {
    let out = run(&[
        "sturm", "--lo", "-2", "--hi", "2", "--coeffs", "-1", "0", "1",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("roots = 2"), "{}", stdout(&out));
}

#[test]
fn sturm_shifts_interval_endpoints_off_roots() {
    let out = run(&[
        "sturm", "--lo", "-3", "--hi", "1", "--coeffs", "-1", "0", "1",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("endpoint-shift"), "{text}");
    assert!(text.contains("roots = 1"), "{text}");
}

#[test]
fn sturm_rejects_the_zero_polynomial() {
    let out = run(&["sturm", "--lo", "0", "--hi", "5", "--coeffs", "0", "0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("zero polynomial"), "{}", stderr(&out));
}

// ---------------------------------------------------------------- global --

#[test]
fn precision_floor_is_enforced() {
    let out = run(&[
        "--precision", "64", "hadamard", "--family", "I", "--q", "4", "--m", "2",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("128"), "{}", stderr(&out));
}

#[test]
fn precision_can_come_from_the_environment() {
    let out = bin()
        .env("HADAMARD_SCHEME_PRECISION", "512")
        .args(["hadamard", "--family", "I", "--q", "4", "--m", "2", "--numeric"])
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
}
