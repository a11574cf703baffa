//! `figures`: plottable geometry for m = 3. Emits the level-set cell
//! polygons of the menu (standard and per anchor strength) in planar
//! coordinates, and the anchor-condition slack sampled on a barycentric
//! grid over the simplex.

use std::path::{Path, PathBuf};

use avote_core::bounds::{w_topk_condition, w_topk_slack};
use avote_core::error::{Error, Result};
use avote_core::geometry::cell_polygons;
use avote_core::simplex::{anchor_menu, ReportMenu, SimplexPoint};

use crate::config::ResolvedConfig;
use crate::output::{fmt_f64, write_file, CsvBuilder, Meta};

const GRID_DIVISIONS: u32 = 100;

fn polygon_rows(csv: &mut CsvBuilder, alpha: Option<f64>, menu: &ReportMenu) -> Result<()> {
    let polys = cell_polygons(menu)?;
    for (cell, poly) in polys.iter().enumerate() {
        for (vertex, [x, y]) in poly.iter().enumerate() {
            csv.row([
                alpha.map(fmt_f64).unwrap_or_default(),
                cell.to_string(),
                menu.label(cell).replace(',', ";"),
                vertex.to_string(),
                fmt_f64(*x),
                fmt_f64(*y),
            ]);
        }
    }
    Ok(())
}

pub fn run(rc: &ResolvedConfig, meta: &Meta, out: &Path) -> Result<Vec<PathBuf>> {
    if rc.config.m != 3 {
        return Err(Error::UnsupportedDimension {
            m: rc.config.m,
            reason: "figure geometry is planar and needs exactly three alternatives",
        });
    }
    let rule = rc.rule()?;
    let menu = rule.menu();
    let mut paths = Vec::new();

    let columns = ["alpha", "cell", "label", "vertex", "x", "y"];
    let mut standard = CsvBuilder::new(meta, &columns);
    polygon_rows(&mut standard, None, menu)?;
    paths.push(write_file(out, "cells_standard.csv", &standard.finish())?);

    if let Some(anchor) = &rc.config.anchor {
        let mut anchored = CsvBuilder::new(meta, &columns);
        for alpha in anchor.alphas()? {
            let params = anchor.params(alpha)?;
            polygon_rows(&mut anchored, Some(alpha), &anchor_menu(menu, &params))?;
        }
        paths.push(write_file(out, "cells_anchored.csv", &anchored.finish())?);
    }

    // slack of the top-set condition over the whole simplex
    let mut region = CsvBuilder::new(meta, &["w1", "w2", "w3", "slack", "condition"]);
    let d = GRID_DIVISIONS;
    for i in 0..=d {
        for j in 0..=(d - i) {
            let k = d - i - j;
            let w = SimplexPoint::new(vec![
                i as f64 / d as f64,
                j as f64 / d as f64,
                k as f64 / d as f64,
            ])?;
            region.row([
                fmt_f64(w[0]),
                fmt_f64(w[1]),
                fmt_f64(w[2]),
                fmt_f64(w_topk_slack(&w)),
                w_topk_condition(&w).to_string(),
            ]);
        }
    }
    paths.push(write_file(out, "region_topk.csv", &region.finish())?);
    Ok(paths)
}
