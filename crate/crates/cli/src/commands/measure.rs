//! `measure`: level-set masses of the rule's menu under the configured
//! density, standard and (per anchor strength) anchored.

use std::path::{Path, PathBuf};

use serde::Serialize;

use avote_core::density::{level_set_measure_auto, Provenance, ReportDistribution};
use avote_core::error::Result;
use avote_core::simplex::anchor_menu;

use crate::config::ResolvedConfig;
use crate::output::{fmt_f64, write_json, CsvBuilder, Meta};

pub fn provenance_label(p: &Provenance) -> String {
    match p {
        Provenance::MonteCarlo { samples } => format!("monte-carlo({samples})"),
        Provenance::ExactGeometry => "exact-geometry".into(),
        Provenance::ClosedForm => "closed-form".into(),
    }
}

#[derive(Serialize)]
struct AnchoredEntry {
    alpha: f64,
    distribution: ReportDistribution,
}

#[derive(Serialize)]
struct MeasureBody {
    rule: &'static str,
    m: usize,
    standard: ReportDistribution,
    anchored: Vec<AnchoredEntry>,
}

pub fn run(rc: &ResolvedConfig, meta: &Meta, out: &Path) -> Result<Vec<PathBuf>> {
    let rule = rc.rule()?;
    let density = rc.density()?;
    let menu = rule.menu();
    let standard = level_set_measure_auto(&density, menu, rc.samples, rc.seed)?;

    let mut anchored = Vec::new();
    if let Some(anchor) = &rc.config.anchor {
        for alpha in anchor.alphas()? {
            let params = anchor.params(alpha)?;
            let transformed = anchor_menu(menu, &params);
            let q = level_set_measure_auto(&density, &transformed, rc.samples, rc.seed)?;
            anchored.push(AnchoredEntry {
                alpha,
                distribution: q,
            });
        }
    }

    let mut csv = CsvBuilder::new(
        meta,
        &["regime", "alpha", "report", "label", "prob", "stderr", "provenance"],
    );
    for (i, label) in menu.labels().iter().enumerate() {
        csv.row([
            "standard".into(),
            String::new(),
            i.to_string(),
            label.replace(',', ";"),
            fmt_f64(standard.probs[i]),
            fmt_f64(standard.stderr[i]),
            provenance_label(&standard.provenance),
        ]);
    }
    for entry in &anchored {
        for (i, label) in menu.labels().iter().enumerate() {
            csv.row([
                "anchored".into(),
                fmt_f64(entry.alpha),
                i.to_string(),
                label.replace(',', ";"),
                fmt_f64(entry.distribution.probs[i]),
                fmt_f64(entry.distribution.stderr[i]),
                provenance_label(&entry.distribution.provenance),
            ]);
        }
    }

    let csv_path = crate::output::write_file(out, "measure.csv", &csv.finish())?;
    let json_path = write_json(
        out,
        "measure.json",
        meta,
        MeasureBody {
            rule: rule.kind().name(),
            m: rule.m(),
            standard,
            anchored,
        },
    )?;
    Ok(vec![csv_path, json_path])
}
