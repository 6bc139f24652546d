//! Black-box tests of the command-line front end: exit codes, JSON output
//! shape, and workspace-file handling.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opalg"))
        .args(args)
        .output()
        .expect("the binary must launch")
}

fn write_fixture(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().expect("temp file");
    f.write_all(contents.as_bytes()).expect("write fixture");
    f
}

/// A small workspace: an invertible 1x1 corner, a rank-one projection, a
/// nilpotent, and two-block modules of every one-sided kind.
fn standard_fixture() -> NamedTempFile {
    write_fixture(
        r#"{
            "matrices": {
                "half":  { "rows": 1, "cols": 1, "entries": [[0.5, 0.0]] },
                "proj":  { "rows": 2, "cols": 2,
                           "entries": [[1.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]] },
                "shift": { "rows": 2, "cols": 2,
                           "entries": [[0.0,0.0],[0.0,0.0],[1.0,0.0],[0.0,0.0]] }
            },
            "algebras": {
                "diag": { "generators": ["proj"], "mode": "unital" }
            },
            "representations": {
                "H":  { "t2": { "T": "half" } },
                "B2": { "t2": { "kind": "b", "dim": 2 } },
                "C2": { "t2": { "kind": "c", "dim": 2 } }
            }
        }"#,
    )
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn dcp_reports_a_failed_collapse_with_exit_zero() {
    let ws = standard_fixture();
    let path = ws.path().to_str().unwrap();
    let out = run(&["--workspace", path, "dcp", "--rep", "H"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("FAILS"), "verdict missing: {text}");
    assert!(text.contains("span dimension        3"), "span dim: {text}");
    assert!(text.contains("bicommutant dimension 4"), "bic dim: {text}");
}

#[test]
fn json_matrices_round_trip_into_a_new_workspace() {
    let ws = standard_fixture();
    let path = ws.path().to_str().unwrap();
    let out = run(&["--workspace", path, "--json", "commutant", "--mats", "proj"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));

    let envelope: serde_json::Value =
        serde_json::from_str(&stdout_of(&out)).expect("stdout must be valid JSON");
    assert_eq!(envelope["command"], "commutant");
    assert_eq!(envelope["seed"], 2024);
    assert!(envelope["tolerance"]["rank_rel"].is_number());
    let basis = envelope["result"]["basis"]
        .as_array()
        .expect("basis array");
    assert_eq!(basis.len(), 2, "commutant of a rank-one projection in M2");

    // Feed an emitted matrix straight back in as a workspace object.
    let recycled = serde_json::json!({
        "matrices": { "m": basis[0] },
        "representations": {}
    });
    let ws2 = write_fixture(&recycled.to_string());
    let path2 = ws2.path().to_str().unwrap();
    let out2 = run(&["--workspace", path2, "bicommutant", "--mats", "m"]);
    assert_eq!(out2.status.code(), Some(0), "stderr: {}", stderr_of(&out2));
}

#[test]
fn malformed_workspace_files_exit_two() {
    let ws = write_fixture("{ this is not json");
    let path = ws.path().to_str().unwrap();
    let out = run(&["--workspace", path, "dcp", "--mats", "x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("workspace"), "{}", stderr_of(&out));

    let ws = write_fixture(
        r#"{ "matrices": { "m": { "rows": 2, "cols": 2, "entries": [[1.0,0.0]] } } }"#,
    );
    let path = ws.path().to_str().unwrap();
    let out = run(&["--workspace", path, "dcp", "--mats", "m"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("matrices.m"), "{}", stderr_of(&out));
}

#[test]
fn unknown_names_exit_two_and_list_what_exists() {
    let ws = standard_fixture();
    let path = ws.path().to_str().unwrap();
    let out = run(&["--workspace", path, "commutant", "--mats", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("nosuch") && err.contains("half"), "{err}");

    let out = run(&["--workspace", path, "hom", "--from", "H", "--to", "ghost"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("ghost"), "{}", stderr_of(&out));
}

#[test]
fn missing_operator_source_is_a_usage_error() {
    let out = run(&["dcp"]);
    assert_eq!(out.status.code(), Some(2), "clap usage errors exit 2");
}

#[test]
fn an_impoverished_family_trips_the_implication_check_with_exit_one() {
    // The corner tuple {E11, E12} has a proper joint range, so the module
    // trivially generates relative to the one-member family consisting of
    // itself — yet its image span is a proper subspace of its bicommutant.
    // The report must refuse to emit that contradiction.
    let ws = write_fixture(
        r#"{
            "matrices": {
                "e11": { "rows": 2, "cols": 2,
                         "entries": [[1.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]] },
                "e12": { "rows": 2, "cols": 2,
                         "entries": [[0.0,0.0],[1.0,0.0],[0.0,0.0],[0.0,0.0]] }
            },
            "representations": {
                "U1": { "ux": { "alpha": ["e11", "e12"] } }
            }
        }"#,
    );
    let path = ws.path().to_str().unwrap();
    let out = run(&["--workspace", path, "classify", "--module", "U1", "--family", "U1"]);
    assert_eq!(out.status.code(), Some(1), "stderr: {}", stderr_of(&out));
    assert!(
        stderr_of(&out).contains("implication"),
        "{}",
        stderr_of(&out)
    );
}

#[test]
fn search_exhaustion_is_a_clean_exit() {
    let out = run(&[
        "search",
        "--target",
        "gen=true,semigen=false",
        "--budget",
        "20",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("no module"), "{}", stdout_of(&out));
}

#[test]
fn search_finds_and_reports_a_two_block_hit() {
    let out = run(&[
        "--json",
        "search",
        "--target",
        "dcp=false",
        "--budget",
        "300",
        "--seed",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let envelope: serde_json::Value =
        serde_json::from_str(&stdout_of(&out)).expect("valid JSON");
    assert_eq!(envelope["result"]["outcome"], "found");
}

#[test]
fn t2_without_a_workspace_handles_one_sided_kinds() {
    let out = run(&["t2", "--kind", "b", "--dim", "3"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("collapse HOLDS"), "{text}");

    let out = run(&["t2", "--kind", "z"]);
    assert_eq!(out.status.code(), Some(2), "unknown kind is bad input");

    let out = run(&["t2"]);
    assert_eq!(out.status.code(), Some(2), "no corner and no kind");
}

#[test]
fn tolerance_overrides_reach_the_engines() {
    // With an absurdly loose rank cutoff every singular value is noise, so
    // the corner looks like zero and the closed form flips; the engines
    // still run without error.
    let ws = standard_fixture();
    let path = ws.path().to_str().unwrap();
    let strict = run(&["--workspace", path, "--json", "t2", "--corner", "half"]);
    assert_eq!(strict.status.code(), Some(0));
    let strict_env: serde_json::Value =
        serde_json::from_str(&stdout_of(&strict)).expect("valid JSON");
    assert_eq!(strict_env["tolerance"]["rank_rel"], 1e-9);
    assert_eq!(strict_env["result"]["closed_form"]["dcp"], false);
}
