//! `welfare`: expected welfare change per anchor strength (enumerated or
//! simulated), the decrease-probability estimate, and its exponential-moment
//! bound, all in one row per alpha.

use std::path::{Path, PathBuf};

use serde::Serialize;

use avote_core::error::Result;
use avote_core::welfare::{decrease_probability, expected_delta_sw, Estimate, WelfareStats};

use crate::config::ResolvedConfig;
use crate::output::{fmt_f64, write_json, CsvBuilder, Meta};

#[derive(Serialize)]
struct WelfareRow {
    alpha: f64,
    stats: WelfareStats,
    /// Sample mean of the realized per-profile change from the decrease run;
    /// a different estimand from stats.expected_delta in exact mode (the
    /// winner is correlated with the profile that elected it).
    realized_delta: Estimate,
}

#[derive(Serialize)]
struct WelfareBody {
    rule: &'static str,
    n: u64,
    mode: &'static str,
    rows: Vec<WelfareRow>,
}

fn join_set(set: &[usize]) -> String {
    if set.is_empty() {
        "-".into()
    } else {
        set.iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join("|")
    }
}

fn opt_f64(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn run(rc: &ResolvedConfig, meta: &Meta, out: &Path) -> Result<Vec<PathBuf>> {
    let rule = rc.rule()?;
    let density = rc.density()?;
    let anchor = rc.anchor()?;
    let n = rc.config.n;
    let mode = rc.delta_mode();

    let mut rows = Vec::new();
    for (i, alpha) in anchor.alphas()?.into_iter().enumerate() {
        let params = anchor.params(alpha)?;
        let mut stats = expected_delta_sw(
            &density, &rule, &params, n, mode, rc.samples, rc.seed, rc.budget,
        )?;
        let dec = decrease_probability(
            &density,
            &rule,
            &params,
            n,
            rc.samples,
            rc.seed.wrapping_add(i as u64 + 1),
            rc.tie_mode(),
        )?;
        stats.decrease_probability = dec.decrease_probability.clone();
        stats.chernoff_bound = dec.chernoff_bound.clone();
        stats.chernoff_vacuous = dec.chernoff_vacuous;
        rows.push(WelfareRow {
            alpha,
            stats,
            realized_delta: Estimate {
                value: dec.expected_delta,
                stderr: dec.expected_delta_stderr.unwrap_or(0.0),
            },
        });
    }

    let mut csv = CsvBuilder::new(
        meta,
        &[
            "alpha",
            "rule",
            "n",
            "expected_delta",
            "expected_delta_stderr",
            "realized_delta",
            "realized_delta_stderr",
            "decrease_probability",
            "decrease_stderr",
            "chernoff_bound",
            "chernoff_stderr",
            "chernoff_vacuous",
            "condition",
            "inc",
            "dec",
            "v",
        ],
    );
    for row in &rows {
        let s = &row.stats;
        let (dp, dps) = s
            .decrease_probability
            .as_ref()
            .map(|e| (fmt_f64(e.value), fmt_f64(e.stderr)))
            .unwrap_or_default();
        let (cb, cbs) = s
            .chernoff_bound
            .as_ref()
            .map(|e| (fmt_f64(e.value), fmt_f64(e.stderr)))
            .unwrap_or_default();
        csv.row([
            fmt_f64(row.alpha),
            rule.kind().name().to_string(),
            n.to_string(),
            fmt_f64(s.expected_delta),
            opt_f64(s.expected_delta_stderr),
            fmt_f64(row.realized_delta.value),
            fmt_f64(row.realized_delta.stderr),
            dp,
            dps,
            cb,
            cbs,
            s.chernoff_vacuous.map(|b| b.to_string()).unwrap_or_default(),
            s.inc_dec_condition
                .map(|b| b.to_string())
                .unwrap_or_default(),
            join_set(&s.inc),
            join_set(&s.dec),
            s.v.iter().map(|x| fmt_f64(*x)).collect::<Vec<_>>().join("|"),
        ]);
    }

    let csv_path = crate::output::write_file(out, "welfare.csv", &csv.finish())?;
    let json_path = write_json(
        out,
        "welfare.json",
        meta,
        WelfareBody {
            rule: rule.kind().name(),
            n,
            mode: match mode {
                avote_core::welfare::DeltaMode::Exact => "exact",
                avote_core::welfare::DeltaMode::MonteCarlo => "monte-carlo",
            },
            rows,
        },
    )?;
    Ok(vec![csv_path, json_path])
}
