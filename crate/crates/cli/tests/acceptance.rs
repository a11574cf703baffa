//! Acceptance gate: one test per numbered release criterion. Every test
//! prints a single line `criterion NN <name>: PASS|FAIL (<details>)` so the
//! whole gate can be read off a `--nocapture` run. Sizes and tolerances are
//! pinned here on purpose; loosening them is a release decision, not a test
//! fix.

use avote_core::bounds::{w_topk_condition, w_topk_slack};
use avote_core::checks::{self, CheckResult};
use avote_core::rules::{RuleKind, VotingRule};
use avote_core::simplex::dot;
use avote_core::{ReportMenu, SimplexPoint};
use std::process::Command;
use std::time::{Duration, Instant};

fn report(num: u32, name: &str, passed: bool, details: &str) {
    let tag = if passed { "PASS" } else { "FAIL" };
    println!("criterion {num:02} {name}: {tag} ({details})");
    assert!(passed, "criterion {num:02} {name}: {details}");
}

fn report_check(num: u32, result: &CheckResult, elapsed: Duration, limit: Option<Duration>) {
    let mut details = result.details.clone();
    if let Some(cx) = &result.counterexample {
        details.push_str("; counterexample: ");
        details.push_str(cx);
    }
    let within = limit.is_none_or(|l| elapsed <= l);
    if !within {
        details.push_str(&format!(
            "; took {:.1}s, limit {:.0}s",
            elapsed.as_secs_f64(),
            limit.unwrap().as_secs_f64()
        ));
    }
    report(num, &result.name, result.passed && within, &details);
}

fn timed(f: impl FnOnce() -> CheckResult) -> (CheckResult, Duration) {
    let start = Instant::now();
    let result = f();
    (result, start.elapsed())
}

#[test]
fn criterion_01_transform_equivalence() {
    let (r, t) = timed(|| checks::check_transform_equivalence(10_000, 41));
    report_check(1, &r, t, Some(Duration::from_secs(10)));
}

#[test]
fn criterion_02_worked_example() {
    let (r, t) = timed(checks::check_worked_example);
    report_check(2, &r, t, None);
}

#[test]
fn criterion_03_aligned_preference_kept() {
    let (r, t) = timed(|| checks::check_alignment_implication(100_000, 43));
    report_check(3, &r, t, None);
}

#[test]
fn criterion_04_cell_symmetry() {
    let (r, t) = timed(|| checks::check_symmetry_measures(1_000_000, 44));
    report_check(4, &r, t, Some(Duration::from_secs(30)));
}

#[test]
fn criterion_05_favorite_cell_grows() {
    let (r, t) = timed(|| checks::check_anchored_cell_growth(20, 45));
    report_check(5, &r, t, None);
}

#[test]
fn criterion_06_bound_sandwich() {
    let (r, t) = timed(|| checks::check_bound_sandwich(10, 46));
    report_check(6, &r, t, Some(Duration::from_secs(120)));
}

#[test]
fn criterion_07_tail_monotonicity() {
    let (r, t) = timed(|| checks::check_tail_monotonicity(50));
    report_check(7, &r, t, None);
}

/// Barycentric grid over the whole simplex with at least `minimum` points:
/// all integer compositions of `divisions`, scaled down.
fn barycentric_grid(m: usize, divisions: u64, minimum: usize) -> Vec<Vec<f64>> {
    let mut grid = Vec::new();
    let mut stack = vec![(Vec::<u64>::new(), divisions)];
    while let Some((prefix, left)) = stack.pop() {
        if prefix.len() == m - 1 {
            let mut point = prefix.clone();
            point.push(left);
            grid.push(point.iter().map(|&i| i as f64 / divisions as f64).collect());
            continue;
        }
        for i in 0..=left {
            let mut next = prefix.clone();
            next.push(i);
            stack.push((next, left - i));
        }
    }
    assert!(grid.len() >= minimum, "grid has only {} points", grid.len());
    grid
}

/// Direct reading of the top-set condition: the (m-1)! rankings that put
/// the favorite first are exactly the highest-anchor-score reports.
fn brute_force_topset(w_sorted: &[f64], menu: &ReportMenu, rule: &VotingRule) -> f64 {
    let q = rule.q_set(0).unwrap();
    let scores: Vec<f64> = menu.reports().iter().map(|r| dot(w_sorted, r)).collect();
    let min_q = q.iter().map(|&i| scores[i]).fold(f64::INFINITY, f64::min);
    let max_rest = (0..menu.len())
        .filter(|i| !q.contains(i))
        .map(|i| scores[i])
        .fold(f64::NEG_INFINITY, f64::max);
    min_q - max_rest
}

#[test]
fn criterion_08_topset_condition_grid() {
    let start = Instant::now();
    let mut agreed = 0u64;
    let mut skipped = 0u64;
    let mut failure = None;
    for (m, divisions) in [(3usize, 140u64), (4, 38)] {
        let menu = ReportMenu::ordinal_raw(m).unwrap();
        let rule = VotingRule::with_menu(RuleKind::Borda, menu.clone()).unwrap();
        for raw in barycentric_grid(m, divisions, 10_000) {
            let mut sorted = raw;
            sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let w = SimplexPoint::new(sorted.clone()).unwrap();
            let slack = w_topk_slack(&w);
            let brute = brute_force_topset(&sorted, &menu, &rule);
            if (slack - brute).abs() > 1e-9 {
                failure = Some(format!("m={m} w={sorted:?} slack {slack} brute {brute}"));
                break;
            }
            if slack.abs() <= 1e-9 {
                skipped += 1;
                continue;
            }
            if w_topk_condition(&w) != (brute > 0.0) {
                failure = Some(format!("m={m} w={sorted:?} condition flipped"));
                break;
            }
            agreed += 1;
        }
    }

    // the m=3 decision boundary crosses each simplex edge where the middle
    // weight hits 1/3
    for edge in [
        vec![2.0 / 3.0, 1.0 / 3.0, 0.0],
        vec![1.0 / 3.0, 0.0, 2.0 / 3.0],
        vec![0.0, 2.0 / 3.0, 1.0 / 3.0],
    ] {
        let slack = w_topk_slack(&SimplexPoint::new(edge.clone()).unwrap());
        if slack.abs() > 1e-12 {
            failure = Some(format!("edge point {edge:?} has slack {slack}"));
        }
    }

    let passed = failure.is_none();
    let details = failure.unwrap_or_else(|| {
        format!(
            "{agreed} grid points agreed with brute force, {skipped} on the boundary; {:.1}s",
            start.elapsed().as_secs_f64()
        )
    });
    report(8, "topset_condition_grid", passed, &details);
}

#[test]
fn criterion_09_lower_bound_tightens() {
    let (r, t) = timed(|| checks::check_tightening_strict(5));
    report_check(9, &r, t, None);
}

#[test]
fn criterion_10_outcomes_match_simulation() {
    let (r, t) = timed(|| checks::check_outcome_vs_simulation(100_000, 50));
    report_check(10, &r, t, None);
}

#[test]
fn criterion_11_welfare_gain_under_alignment() {
    let (r, t) = timed(|| checks::check_delta_sign(10, 20_000, 51));
    report_check(11, &r, t, Some(Duration::from_secs(120)));
}

#[test]
fn criterion_12_decrease_bound_holds() {
    let (r, t) = timed(|| checks::check_decrease_bound(10, 100_000, 52));
    report_check(12, &r, t, None);
}

#[test]
fn criterion_13_verify_is_reproducible() {
    let exe = env!("CARGO_BIN_EXE_avote");
    let tmp = std::env::temp_dir().join(format!("avote-accept-{}", std::process::id()));
    let run = |sub: &str| {
        let dir = tmp.join(sub);
        let output = Command::new(exe)
            .args(["verify", "--quick", "--seed", "99", "--out"])
            .arg(&dir)
            .output()
            .expect("verify run");
        assert!(
            output.status.success(),
            "verify exited with {:?}: {}",
            output.status.code(),
            String::from_utf8_lossy(&output.stderr)
        );
        let summary = std::fs::read(dir.join("verify.json")).expect("summary file");
        (output.stdout, summary)
    };
    let (stdout_a, json_a) = run("a");
    let (stdout_b, json_b) = run("b");
    let _ = std::fs::remove_dir_all(&tmp);

    let passed = stdout_a == stdout_b && json_a == json_b;
    let details = if passed {
        format!(
            "two seeded runs produced identical output ({} stdout bytes, {} summary bytes)",
            stdout_a.len(),
            json_a.len()
        )
    } else {
        "seeded reruns differed".to_string()
    };
    report(13, "verify_reproducible", passed, &details);
}
