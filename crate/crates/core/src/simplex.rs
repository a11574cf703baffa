//! Points on the probability simplex, report menus, nearest-report
//! assignment, and the anchored-menu transform.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};

/// Construction tolerance for simplex membership.
pub const COORD_TOL: f64 = 1e-12;

/// Two reports within this Euclidean distance of the minimum are tied.
pub const TIE_TOL: f64 = 1e-10;

/// A nonnegative vector summing to 1. Holds utilities, anchors, and means.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplexPoint {
    coords: Vec<f64>,
}

impl SimplexPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "simplex point needs at least 2 coordinates, got {}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
        if let Some(c) = coords.iter().find(|&&c| c < -COORD_TOL) {
            return Err(Error::InvalidInput(format!("negative coordinate {c}")));
        }
        let sum: f64 = coords.iter().sum();
        if (sum - 1.0).abs() > COORD_TOL {
            return Err(Error::InvalidInput(format!(
                "coordinates sum to {sum}, expected 1"
            )));
        }
        Ok(Self { coords })
    }

    /// The barycenter (1/m, ..., 1/m).
    pub fn uniform(m: usize) -> Self {
        Self {
            coords: vec![1.0 / m as f64; m],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

impl std::ops::Deref for SimplexPoint {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.coords
    }
}

/// Anchor w and mixing weight alpha in [0, 1).
#[derive(Debug, Clone, Serialize)]
pub struct AnchorParams {
    pub w: SimplexPoint,
    pub alpha: f64,
}

impl AnchorParams {
    pub fn new(w: SimplexPoint, alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || !(0.0..1.0).contains(&alpha) {
            return Err(Error::InvalidInput(format!(
                "alpha must lie in [0, 1), got {alpha}"
            )));
        }
        Ok(Self { w, alpha })
    }

    /// Index of the strict maximum of w; errors when the maximum is shared.
    pub fn a_star(&self) -> Result<usize> {
        unique_argmax(&self.w)
    }
}

/// Index of the strict maximum, or an error when the maximum is shared.
pub fn unique_argmax(v: &[f64]) -> Result<usize> {
    let (idx, &max) = v
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .ok_or_else(|| Error::InvalidInput("empty vector".into()))?;
    if v.iter().enumerate().any(|(i, &x)| i != idx && x == max) {
        return Err(Error::InvalidInput(
            "no unique maximum coordinate".into(),
        ));
    }
    Ok(idx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MenuKind {
    Plurality,
    Ordinal,
    Veto,
    Custom,
}

/// A finite set of score vectors voters may submit.
///
/// Built-in menus carry exact integer scores (used for tallying) and, for
/// ordinal menus, the ranking behind each report. Score vectors used for
/// distance computations are normalized to sum to 1 unless `raw` is chosen
/// at construction; anchored images keep whatever scale the source had.
#[derive(Debug, Clone, Serialize)]
pub struct ReportMenu {
    reports: Vec<Vec<f64>>,
    labels: Vec<String>,
    kind: MenuKind,
    normalized: bool,
    m: usize,
    /// Raw per-alternative integer scores of each report, for exact tallies.
    int_scores: Option<Vec<Vec<u64>>>,
    /// Ordinal menus only: alternatives best-first.
    rankings: Option<Vec<Vec<usize>>>,
}

pub(crate) fn alt_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

impl ReportMenu {
    /// The m standard basis vectors.
    pub fn plurality(m: usize) -> Result<Self> {
        check_m(m)?;
        let reports = (0..m)
            .map(|i| (0..m).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        let int_scores = (0..m)
            .map(|i| (0..m).map(|j| u64::from(i == j)).collect())
            .collect();
        Ok(Self {
            reports,
            labels: (0..m).map(alt_label).collect(),
            kind: MenuKind::Plurality,
            normalized: true,
            m,
            int_scores: Some(int_scores),
            rankings: None,
        })
    }

    /// All m! rankings, scored by position: the best alternative gets m-1
    /// points, the worst 0. Scores are divided by their common sum.
    pub fn ordinal(m: usize) -> Result<Self> {
        Self::ordinal_scaled(m, true)
    }

    /// Ordinal menu with raw {0, ..., m-1} scores left unscaled.
    pub fn ordinal_raw(m: usize) -> Result<Self> {
        Self::ordinal_scaled(m, false)
    }

    fn ordinal_scaled(m: usize, normalized: bool) -> Result<Self> {
        check_m(m)?;
        if m > 8 {
            return Err(Error::UnsupportedDimension {
                m,
                reason: "ordinal menu has m! reports; capped at m = 8",
            });
        }
        let total: f64 = (m * (m - 1) / 2) as f64;
        let scale = if normalized { 1.0 / total } else { 1.0 };
        let mut reports = Vec::new();
        let mut labels = Vec::new();
        let mut int_scores = Vec::new();
        let mut rankings = Vec::new();
        for perm in (0..m).permutations(m) {
            let mut score = vec![0u64; m];
            for (pos, &alt) in perm.iter().enumerate() {
                score[alt] = (m - 1 - pos) as u64;
            }
            reports.push(score.iter().map(|&s| s as f64 * scale).collect());
            labels.push(perm.iter().map(|&a| alt_label(a)).join(">"));
            int_scores.push(score);
            rankings.push(perm);
        }
        Ok(Self {
            reports,
            labels,
            kind: MenuKind::Ordinal,
            normalized,
            m,
            int_scores: Some(int_scores),
            rankings: Some(rankings),
        })
    }

    /// One report per alternative: a point mass against it, i.e. equal score
    /// for everyone else.
    pub fn veto(m: usize) -> Result<Self> {
        check_m(m)?;
        let scale = 1.0 / (m - 1) as f64;
        let reports = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { 0.0 } else { scale })
                    .collect()
            })
            .collect();
        let int_scores = (0..m)
            .map(|i| (0..m).map(|j| u64::from(i != j)).collect())
            .collect();
        Ok(Self {
            reports,
            labels: (0..m).map(|i| format!("veto {}", alt_label(i))).collect(),
            kind: MenuKind::Veto,
            normalized: true,
            m,
            int_scores: Some(int_scores),
            rankings: None,
        })
    }

    /// Arbitrary score vectors; no tallying metadata attached.
    pub fn custom(reports: Vec<Vec<f64>>, labels: Vec<String>) -> Result<Self> {
        if reports.is_empty() {
            return Err(Error::InvalidInput("empty menu".into()));
        }
        let m = reports[0].len();
        check_m(m)?;
        if reports.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidInput("inconsistent report lengths".into()));
        }
        if labels.len() != reports.len() {
            return Err(Error::InvalidInput("labels/reports length mismatch".into()));
        }
        for (i, a) in reports.iter().enumerate() {
            for b in reports.iter().skip(i + 1) {
                let close = a
                    .iter()
                    .zip(b)
                    .all(|(x, y)| (x - y).abs() <= COORD_TOL);
                if close {
                    return Err(Error::InvalidInput("duplicate reports in menu".into()));
                }
            }
        }
        Ok(Self {
            reports,
            labels,
            kind: MenuKind::Custom,
            normalized: false,
            m,
            int_scores: None,
            rankings: None,
        })
    }

    pub fn len(&self) -> usize {
        self.reports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reports.is_empty()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> MenuKind {
        self.kind
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }

    pub fn reports(&self) -> &[Vec<f64>] {
        &self.reports
    }

    pub fn report(&self, i: usize) -> &[f64] {
        &self.reports[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn int_scores(&self) -> Option<&[Vec<u64>]> {
        self.int_scores.as_deref()
    }

    pub fn rankings(&self) -> Option<&[Vec<usize>]> {
        self.rankings.as_deref()
    }
}

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("need m >= 2 alternatives, got {m}")));
    }
    Ok(())
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist2(a, b).sqrt()
}

/// Indices of all reports at minimal Euclidean distance from u, ties within
/// `TIE_TOL` of the minimum included, in ascending index order.
pub fn nearest_report(u: &[f64], menu: &ReportMenu) -> Result<Vec<usize>> {
    if menu.is_empty() {
        return Err(Error::InvalidInput("empty menu".into()));
    }
    if u.len() != menu.m() {
        return Err(Error::InvalidInput(format!(
            "point has {} coordinates, menu expects {}",
            u.len(),
            menu.m()
        )));
    }
    let dists: Vec<f64> = menu.reports().iter().map(|r| dist(u, r)).collect();
    let min = dists.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(dists
        .iter()
        .enumerate()
        .filter(|(_, &d)| d <= min + TIE_TOL)
        .map(|(i, _)| i)
        .collect())
}

/// The unique nearest report when it beats the runner-up by more than
/// `margin`; `None` on a near-tie.
pub fn nearest_with_margin(u: &[f64], menu: &ReportMenu, margin: f64) -> Option<usize> {
    let mut best = (usize::MAX, f64::INFINITY);
    let mut second = f64::INFINITY;
    for (i, r) in menu.reports().iter().enumerate() {
        let d = dist(u, r);
        if d < best.1 {
            second = best.1;
            best = (i, d);
        } else if d < second {
            second = d;
        }
    }
    (second - best.1 > margin).then_some(best.0)
}

/// The shifted utility (1-alpha) u + alpha w; stays on the simplex.
pub fn anchored_utility(u: &SimplexPoint, params: &AnchorParams) -> SimplexPoint {
    let a = params.alpha;
    let coords = u
        .iter()
        .zip(params.w.iter())
        .map(|(ui, wi)| (1.0 - a) * ui + a * wi)
        .collect();
    SimplexPoint::new(coords).expect("convex combination stays on the simplex")
}

/// Image of one report under the menu transform (r - alpha w) / (1 - alpha).
pub fn anchor_report(r: &[f64], params: &AnchorParams) -> Vec<f64> {
    let a = params.alpha;
    r.iter()
        .zip(params.w.iter())
        .map(|(ri, wi)| (ri - a * wi) / (1.0 - a))
        .collect()
}

/// Inverse of `anchor_report`: s back to (1-alpha) s + alpha w.
pub fn unanchor_report(s: &[f64], params: &AnchorParams) -> Vec<f64> {
    let a = params.alpha;
    s.iter()
        .zip(params.w.iter())
        .map(|(si, wi)| (1.0 - a) * si + a * wi)
        .collect()
}

/// The transformed menu under which plain utilities vote exactly as anchored
/// utilities vote under the source menu. Labels and tallying metadata carry
/// over report-by-report since the transform is a bijection.
pub fn anchor_menu(menu: &ReportMenu, params: &AnchorParams) -> ReportMenu {
    let reports = menu
        .reports()
        .iter()
        .map(|r| anchor_report(r, params))
        .collect();
    ReportMenu {
        reports,
        labels: menu.labels.clone(),
        kind: menu.kind,
        normalized: menu.normalized,
        m: menu.m,
        int_scores: menu.int_scores.clone(),
        rankings: menu.rankings.clone(),
    }
}

/// Inverse of `anchor_menu`.
pub fn unanchor_menu(menu: &ReportMenu, params: &AnchorParams) -> ReportMenu {
    let reports = menu
        .reports()
        .iter()
        .map(|r| unanchor_report(r, params))
        .collect();
    ReportMenu {
        reports,
        labels: menu.labels.clone(),
        kind: menu.kind,
        normalized: menu.normalized,
        m: menu.m,
        int_scores: menu.int_scores.clone(),
        rankings: menu.rankings.clone(),
    }
}

/// Hypothesis of the move-up guarantee: u weakly prefers s to t by distance
/// and the anchor weakly scores s above t. When this holds for two reports
/// of equal norm (all built-in menus are coordinate-permutation orbits, so
/// any two of their reports qualify), the transform keeps s weakly
/// preferred; for arbitrary unequal-norm points the conclusion can fail.
pub fn alignment_predicate(s: &[f64], t: &[f64], u: &[f64], params: &AnchorParams) -> bool {
    dist(u, s) <= dist(u, t) && dot(&params.w, s) >= dot(&params.w, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(v: &[f64]) -> SimplexPoint {
        SimplexPoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn simplex_point_validation() {
        assert!(SimplexPoint::new(vec![0.5, 0.5]).is_ok());
        assert!(SimplexPoint::new(vec![0.5, 0.6]).is_err());
        assert!(SimplexPoint::new(vec![-0.1, 1.1]).is_err());
        assert!(SimplexPoint::new(vec![1.0]).is_err());
        assert!(SimplexPoint::new(vec![f64::NAN, 1.0]).is_err());
        // within tolerance of a valid point
        assert!(SimplexPoint::new(vec![0.5 + 4e-13, 0.5 - 7e-13]).is_ok());
    }

    #[test]
    fn menu_shapes() {
        let p = ReportMenu::plurality(3).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.report(1), &[0.0, 1.0, 0.0]);
        assert_eq!(p.label(2), "c");

        let o = ReportMenu::ordinal(3).unwrap();
        assert_eq!(o.len(), 6);
        assert_eq!(o.label(0), "a>b>c");
        for r in o.reports() {
            let sum: f64 = r.iter().sum();
            assert!((sum - 1.0).abs() < 1e-12);
        }
        // lexicographic permutation order puts a>b>c first, c>b>a last
        assert_eq!(o.rankings().unwrap()[0], vec![0, 1, 2]);
        assert_eq!(o.rankings().unwrap()[5], vec![2, 1, 0]);

        let v = ReportMenu::veto(3).unwrap();
        assert_eq!(v.report(0), &[0.0, 0.5, 0.5]);
        assert_eq!(v.label(0), "veto a");

        let raw = ReportMenu::ordinal_raw(3).unwrap();
        assert_eq!(raw.report(0), &[2.0, 1.0, 0.0]);
    }

    #[test]
    fn menus_closed_under_alternative_permutations() {
        for menu in [
            ReportMenu::plurality(4).unwrap(),
            ReportMenu::ordinal(3).unwrap(),
            ReportMenu::veto(4).unwrap(),
        ] {
            let m = menu.m();
            // swap alternatives 0 and 1 in every report; the result must be
            // some report of the same menu
            for r in menu.reports() {
                let mut s = r.clone();
                s.swap(0, 1);
                assert!(
                    menu.reports()
                        .iter()
                        .any(|t| t.iter().zip(&s).all(|(x, y)| (x - y).abs() < 1e-15)),
                    "menu of size {m} not closed under swap"
                );
            }
        }
    }

    #[test]
    fn nearest_report_basic() {
        let p = ReportMenu::plurality(3).unwrap();
        // top coordinate decides
        assert_eq!(nearest_report(&[0.2, 0.5, 0.3], &p).unwrap(), vec![1]);
        // a report itself
        assert_eq!(nearest_report(&[1.0, 0.0, 0.0], &p).unwrap(), vec![0]);
        // barycenter ties all three ways
        assert_eq!(
            nearest_report(&[1.0 / 3.0; 3], &p).unwrap(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn nearest_report_ordinal_example() {
        // all six distances checked externally; a>b>c wins
        let o = ReportMenu::ordinal(3).unwrap();
        assert_eq!(nearest_report(&[0.5, 0.3, 0.2], &o).unwrap(), vec![0]);
    }

    #[test]
    fn nearest_margin_filter() {
        let p = ReportMenu::plurality(3).unwrap();
        assert_eq!(nearest_with_margin(&[0.2, 0.5, 0.3], &p, 1e-8), Some(1));
        assert_eq!(nearest_with_margin(&[1.0 / 3.0; 3], &p, 1e-8), None);
    }

    #[test]
    fn anchored_utility_worked_values() {
        let u = sp(&[0.5, 0.45, 0.05]);
        let w = sp(&[0.0, 0.5, 0.5]);
        let params = AnchorParams::new(w, 0.1).unwrap();
        let au = anchored_utility(&u, &params);
        assert!((au[0] - 0.45).abs() < 1e-15);
        assert!((au[1] - 0.455).abs() < 1e-15);
        assert!((au[2] - 0.095).abs() < 1e-15);

        // the shift changes the plurality vote from a to b
        let menu = ReportMenu::plurality(3).unwrap();
        assert_eq!(nearest_report(&u, &menu).unwrap(), vec![0]);
        assert_eq!(nearest_report(&au, &menu).unwrap(), vec![1]);
    }

    #[test]
    fn anchored_utility_identities() {
        let u = sp(&[0.3, 0.3, 0.4]);
        let w = sp(&[0.2, 0.5, 0.3]);
        let id = AnchorParams::new(w.clone(), 0.0).unwrap();
        assert_eq!(anchored_utility(&u, &id).coords(), u.coords());

        // w is a fixed point for every alpha
        for alpha in [0.1, 0.5, 0.9] {
            let params = AnchorParams::new(w.clone(), alpha).unwrap();
            let moved = anchored_utility(&w, &params);
            for (x, y) in moved.iter().zip(w.iter()) {
                assert!((x - y).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn anchor_params_validation() {
        let w = sp(&[0.5, 0.25, 0.25]);
        assert!(AnchorParams::new(w.clone(), 1.0).is_err());
        assert!(AnchorParams::new(w.clone(), -0.1).is_err());
        assert!(AnchorParams::new(w.clone(), f64::NAN).is_err());
        assert_eq!(AnchorParams::new(w, 0.3).unwrap().a_star().unwrap(), 0);
        let tied = sp(&[0.4, 0.4, 0.2]);
        assert!(AnchorParams::new(tied, 0.3).unwrap().a_star().is_err());
    }

    #[test]
    fn anchor_report_checked_value() {
        // (1,0,0) maps to (10/9, -1/18, -1/18) for w=(0,1/2,1/2), alpha=1/10
        let w = sp(&[0.0, 0.5, 0.5]);
        let params = AnchorParams::new(w, 0.1).unwrap();
        let img = anchor_report(&[1.0, 0.0, 0.0], &params);
        assert!((img[0] - 10.0 / 9.0).abs() < 1e-15);
        assert!((img[1] + 1.0 / 18.0).abs() < 1e-15);
        assert!((img[2] + 1.0 / 18.0).abs() < 1e-15);
    }

    #[test]
    fn anchor_menu_roundtrip() {
        let menu = ReportMenu::ordinal(3).unwrap();
        let w = sp(&[0.6, 0.3, 0.1]);
        let params = AnchorParams::new(w, 0.25).unwrap();
        let there = anchor_menu(&menu, &params);
        assert_eq!(there.labels(), menu.labels());
        let back = unanchor_menu(&there, &params);
        for (r, s) in menu.reports().iter().zip(back.reports()) {
            for (x, y) in r.iter().zip(s) {
                assert!((x - y).abs() < 1e-14);
            }
        }
        // alpha = 0 leaves the menu untouched
        let id = AnchorParams::new(sp(&[0.6, 0.3, 0.1]), 0.0).unwrap();
        let same = anchor_menu(&menu, &id);
        assert_eq!(same.reports(), menu.reports());
    }

    #[test]
    fn alignment_predicate_examples() {
        let s = [1.0, 0.0, 0.0];
        let t = [0.0, 1.0, 0.0];
        let w = sp(&[1.0, 0.0, 0.0]);
        let params = AnchorParams::new(w, 0.2).unwrap();
        assert!(alignment_predicate(&s, &t, &[0.6, 0.4, 0.0], &params));
        assert!(!alignment_predicate(&s, &t, &[0.4, 0.6, 0.0], &params));

        // conclusion for the true case: transformed distances keep the order
        let ps = anchor_report(&s, &params);
        let pt = anchor_report(&t, &params);
        let u = [0.6, 0.4, 0.0];
        assert!((dist2(&u, &ps) - 0.32).abs() < 1e-15);
        assert!((dist2(&u, &pt) - 1.445).abs() < 1e-15);
    }

    #[test]
    fn custom_menu_validation() {
        assert!(ReportMenu::custom(vec![], vec![]).is_err());
        let dup = ReportMenu::custom(
            vec![vec![1.0, 0.0], vec![1.0, 0.0]],
            vec!["x".into(), "y".into()],
        );
        assert!(dup.is_err());
    }
}
