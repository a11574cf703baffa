//! `verify`: run the invariant battery, print one deterministic line per
//! check, and write a machine-readable summary. Timing goes to stderr only,
//! so identical seeds produce identical stdout and files.

use std::path::Path;

use serde::Serialize;

use avote_core::checks::{run_all, CheckResult};
use avote_core::error::Result;

use crate::output::{write_json, Meta};

#[derive(Serialize)]
struct VerifyBody {
    quick: bool,
    passed: usize,
    failed: usize,
    results: Vec<CheckResult>,
}

pub struct VerifyOutcome {
    pub all_passed: bool,
}

pub fn run(quick: bool, seed: u64, meta: &Meta, out: &Path) -> Result<VerifyOutcome> {
    let results = run_all(quick, seed);
    let mut passed = 0;
    let mut failed = 0;
    for r in &results {
        report_line(r);
        eprintln!("  ({}: {:.2}s)", r.name, r.seconds);
        if r.passed {
            passed += 1;
        } else {
            failed += 1;
        }
    }
    println!("verify: {passed} passed, {failed} failed");
    let total: f64 = results.iter().map(|r| r.seconds).sum();
    eprintln!("  (total {total:.2}s)");
    write_json(
        out,
        "verify.json",
        meta,
        VerifyBody {
            quick,
            passed,
            failed,
            results,
        },
    )?;
    Ok(VerifyOutcome {
        all_passed: failed == 0,
    })
}

fn report_line(r: &CheckResult) {
    let status = if r.passed { "PASS" } else { "FAIL" };
    match &r.counterexample {
        Some(cx) => println!("{status} {}: {} [counterexample: {cx}]", r.name, r.details),
        None => println!("{status} {}: {}", r.name, r.details),
    }
}
