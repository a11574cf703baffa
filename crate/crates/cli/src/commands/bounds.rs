//! `bounds`: the win-probability sandwich for the anchor's favorite under
//! the standard and anchored report distributions, per anchor strength,
//! with tightening verdicts and their hypothesis flags.

use std::path::{Path, PathBuf};

use serde::Serialize;

use avote_core::bounds::{tightening_report, LowerVariant, TighteningReport, Verdict};
use avote_core::density::level_set_measure_auto;
use avote_core::error::Result;
use avote_core::rules::RuleKind;
use avote_core::simplex::anchor_menu;

use crate::config::ResolvedConfig;
use crate::output::{fmt_f64, write_json, CsvBuilder, Meta};

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Tightened => "tightened",
        Verdict::Unchanged => "unchanged",
        Verdict::Loosened => "loosened",
    }
}

/// The lower-bound comparison is only claimed when the anchor clears the
/// top-set condition on ranking menus; plurality needs no such condition.
fn lower_column(kind: RuleKind, rep: &TighteningReport) -> String {
    if kind != RuleKind::Plurality && !rep.w_condition {
        "hypothesis-not-met".into()
    } else {
        verdict_label(rep.lower_verdict).into()
    }
}

/// The upper-bound comparison is claimed only when no rival's first-place
/// mass grew.
fn upper_column(rep: &TighteningReport) -> String {
    if !rep.rival_mass_nonincreasing {
        "hypothesis-not-met".into()
    } else {
        verdict_label(rep.upper_verdict).into()
    }
}

#[derive(Serialize)]
struct BoundsEntry {
    alpha: f64,
    report: TighteningReport,
}

#[derive(Serialize)]
struct BoundsBody {
    rule: &'static str,
    n: u64,
    rows: Vec<BoundsEntry>,
}

pub fn run(rc: &ResolvedConfig, meta: &Meta, out: &Path) -> Result<Vec<PathBuf>> {
    let rule = rc.rule()?;
    let density = rc.density()?;
    let anchor = rc.anchor()?;
    let menu = rule.menu();
    let n = rc.config.n;
    let p = level_set_measure_auto(&density, menu, rc.samples, rc.seed)?;

    let mut rows = Vec::new();
    for alpha in anchor.alphas()? {
        let params = anchor.params(alpha)?;
        let q = level_set_measure_auto(&density, &anchor_menu(menu, &params), rc.samples, rc.seed)?;
        let rep = tightening_report(&p, &q, &rule, n, &params.w, LowerVariant::HalfTie)?;
        rows.push(BoundsEntry { alpha, report: rep });
    }

    let mut csv = CsvBuilder::new(
        meta,
        &[
            "alpha",
            "a_star",
            "lower_standard",
            "upper_standard",
            "lower_anchored",
            "upper_anchored",
            "success_prob_standard",
            "success_prob_anchored",
            "w_condition",
            "rival_mass_nonincreasing",
            "lower_verdict",
            "upper_verdict",
        ],
    );
    for entry in &rows {
        let r = &entry.report;
        csv.row([
            fmt_f64(entry.alpha),
            r.a_star.to_string(),
            fmt_f64(r.standard.lower),
            fmt_f64(r.standard.upper),
            fmt_f64(r.anchored.lower),
            fmt_f64(r.anchored.upper),
            fmt_f64(r.standard.success_prob),
            fmt_f64(r.anchored.success_prob),
            r.w_condition.to_string(),
            r.rival_mass_nonincreasing.to_string(),
            lower_column(rule.kind(), r),
            upper_column(r),
        ]);
    }

    let csv_path = crate::output::write_file(out, "bounds.csv", &csv.finish())?;
    let json_path = write_json(
        out,
        "bounds.json",
        meta,
        BoundsBody {
            rule: rule.kind().name(),
            n,
            rows,
        },
    )?;
    Ok(vec![csv_path, json_path])
}
