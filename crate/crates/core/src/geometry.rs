//! Exact level-set geometry for m = 3: the simplex embeds isometrically in
//! the plane, nearest-report cells are convex polygons cut out by
//! perpendicular bisectors, and areas come from the shoelace formula.

use crate::error::{Error, Result};
use crate::simplex::ReportMenu;

pub type Point2 = [f64; 2];

// Orthonormal basis of the plane x + y + z = const, so planar distances equal
// 3-space distances. Both vectors are orthogonal to (1,1,1); reports of a
// common menu share their coordinate sum, which makes the in-plane nearest
// report agree with the 3-space one.
const B1: [f64; 3] = [
    std::f64::consts::FRAC_1_SQRT_2,
    -std::f64::consts::FRAC_1_SQRT_2,
    0.0,
];
const B2: [f64; 3] = [0.4082482904638631, 0.4082482904638631, -0.8164965809277261];
const CENTER: [f64; 3] = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0];

/// Planar coordinates of a 3-vector relative to the simplex barycenter.
pub fn embed(v: &[f64]) -> Result<Point2> {
    if v.len() != 3 {
        return Err(Error::UnsupportedDimension {
            m: v.len(),
            reason: "planar embedding is defined for m = 3",
        });
    }
    let d = [v[0] - CENTER[0], v[1] - CENTER[1], v[2] - CENTER[2]];
    Ok([
        d[0] * B1[0] + d[1] * B1[1] + d[2] * B1[2],
        d[0] * B2[0] + d[1] * B2[1] + d[2] * B2[2],
    ])
}

/// The embedded simplex: an equilateral triangle around the origin.
pub fn simplex_triangle() -> [Point2; 3] {
    [
        embed(&[1.0, 0.0, 0.0]).unwrap(),
        embed(&[0.0, 1.0, 0.0]).unwrap(),
        embed(&[0.0, 0.0, 1.0]).unwrap(),
    ]
}

/// Clips a convex polygon to the half-plane { x : n.x <= c }.
pub fn clip_half_plane(poly: &[Point2], n: Point2, c: f64) -> Vec<Point2> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let p0 = poly[i];
        let p1 = poly[(i + 1) % poly.len()];
        let d0 = n[0] * p0[0] + n[1] * p0[1] - c;
        let d1 = n[0] * p1[0] + n[1] * p1[1] - c;
        if d0 <= 0.0 {
            out.push(p0);
        }
        if (d0 < 0.0) != (d1 < 0.0) {
            let denom = d0 - d1;
            if denom.abs() > f64::EPSILON * (d0.abs() + d1.abs() + 1.0) {
                let t = d0 / denom;
                out.push([p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1])]);
            }
        }
    }
    out
}

pub fn polygon_area(poly: &[Point2]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..poly.len() {
        let [x0, y0] = poly[i];
        let [x1, y1] = poly[(i + 1) % poly.len()];
        s += x0 * y1 - x1 * y0;
    }
    s.abs() / 2.0
}

/// Intersection of two convex polygons: one clipped by the other's edges.
pub fn convex_intersection(subject: &[Point2], clip: &[Point2]) -> Vec<Point2> {
    let mut poly = subject.to_vec();
    for i in 0..clip.len() {
        if poly.is_empty() {
            break;
        }
        let [x0, y0] = clip[i];
        let [x1, y1] = clip[(i + 1) % clip.len()];
        // inward normal depends on orientation; flip so the polygon's own
        // vertices satisfy n.x <= c
        let mut n = [y1 - y0, x0 - x1];
        let mut c = n[0] * x0 + n[1] * y0;
        let probe = clip[(i + 2) % clip.len()];
        if n[0] * probe[0] + n[1] * probe[1] > c {
            n = [-n[0], -n[1]];
            c = -c;
        }
        poly = clip_half_plane(&poly, n, c);
    }
    poly
}

fn common_sum_check(menu: &ReportMenu) -> Result<()> {
    let sums: Vec<f64> = menu.reports().iter().map(|r| r.iter().sum()).collect();
    let first = sums[0];
    if sums.iter().any(|s| (s - first).abs() > 1e-9) {
        return Err(Error::InvalidInput(
            "reports do not share a coordinate sum; planar cells would not \
             match 3-space nearest reports"
                .into(),
        ));
    }
    Ok(())
}

/// Nearest-report cells of a 3-alternative menu, clipped to the simplex
/// triangle, one convex polygon per report (possibly empty).
pub fn cell_polygons(menu: &ReportMenu) -> Result<Vec<Vec<Point2>>> {
    if menu.m() != 3 {
        return Err(Error::UnsupportedDimension {
            m: menu.m(),
            reason: "exact cells require m = 3",
        });
    }
    if menu.is_empty() {
        return Err(Error::InvalidInput("empty menu".into()));
    }
    common_sum_check(menu)?;
    let pts: Vec<Point2> = menu
        .reports()
        .iter()
        .map(|r| embed(r))
        .collect::<Result<_>>()?;
    let triangle = simplex_triangle();
    let mut cells = Vec::with_capacity(pts.len());
    for (i, pi) in pts.iter().enumerate() {
        let mut poly: Vec<Point2> = triangle.to_vec();
        for (j, pj) in pts.iter().enumerate() {
            if i == j || poly.is_empty() {
                continue;
            }
            // |x - pi| <= |x - pj|  <=>  2(pj - pi).x <= |pj|^2 - |pi|^2
            let n = [2.0 * (pj[0] - pi[0]), 2.0 * (pj[1] - pi[1])];
            let c = pj[0] * pj[0] + pj[1] * pj[1] - pi[0] * pi[0] - pi[1] * pi[1];
            poly = clip_half_plane(&poly, n, c);
        }
        cells.push(poly);
    }
    Ok(cells)
}

/// Relative area of each report's cell under the uniform density on the
/// m = 3 simplex. Exact up to floating-point rounding in the clipping.
pub fn exact_measure_m3(menu: &ReportMenu) -> Result<Vec<f64>> {
    let cells = cell_polygons(menu)?;
    let total = polygon_area(&simplex_triangle());
    Ok(cells.iter().map(|c| polygon_area(c) / total).collect())
}
