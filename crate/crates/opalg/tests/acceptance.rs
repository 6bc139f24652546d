//! End-to-end acceptance run.
//!
//! Criteria 1–10 are the library's cross-validation suite (closed forms vs
//! generic engines, identity checks, invariance probes); criterion 11 runs
//! the installed command-line front end's own `suite` subcommand and holds
//! it to a five-minute budget.  One `PASS`/`FAIL` line is printed per
//! criterion (visible with `cargo test -- --nocapture`, or in the captured
//! output on failure).

use std::process::Command;
use std::time::Instant;

use opalg::linalg::Tolerance;
use opalg::suite;

#[test]
fn acceptance() {
    let report = suite::run_all(2024, Tolerance::default()).expect("suite must run to completion");
    for c in &report.outcomes {
        println!(
            "{} criterion {:>2}: {} ({:.1}s) — {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            c.seconds,
            c.details,
        );
    }

    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_opalg"))
        .args(["suite", "--seed", "2024"])
        .output()
        .expect("the binary must launch");
    let elapsed = start.elapsed().as_secs_f64();
    let cli_pass = out.status.success() && elapsed < 300.0;
    println!(
        "{} criterion 11: command-line suite run exits clean within five minutes ({elapsed:.1}s)",
        if cli_pass { "PASS" } else { "FAIL" },
    );

    assert!(
        report.all_pass,
        "criteria 1-10 must all pass; failing: {:?}",
        report
            .outcomes
            .iter()
            .filter(|c| !c.pass)
            .map(|c| (c.id, c.name, c.details.clone()))
            .collect::<Vec<_>>()
    );
    assert!(
        cli_pass,
        "the command-line suite run must exit 0 in under five minutes \
         (took {elapsed:.1}s, status {:?});\nstdout:\n{}\nstderr:\n{}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
    );
}
