//! Ray-cast concave hull.
//!
//! Horizontal rays from the left and right give one extreme per row, vertical
//! rays from the top and bottom one extreme per column. Each of the four
//! profiles is closed over a window of one node spacing (so gaps between
//! neighbouring nodes do not show), its indentations are limited to
//! `(1 - concavity)` of the bounding-box extent, and it is pushed outward by
//! the enclosure offset. The hull is the intersection of the row polygon, the
//! column polygon and the offset convex hull.

use serde::{Deserialize, Serialize};

use super::arrangement::intersect_simple;
use super::metrics::convex_hull;
use super::polygon::{ring_is_simple, signed_area};
use super::{bbox, Point, Polygon};
use crate::error::{Error, Result};
use crate::layout::Layout;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HullConfig {
    pub ray_spacing: f64,
    pub concavity: f64,
    pub enclosure: f64,
    /// Evenly spaced samples per edge for relevance tests; `None` samples an
    /// edge where the rays cross it.
    pub edge_sample_count: Option<usize>,
    /// Node spacing the closing window and enclosure offset are relative to.
    pub horizontal_spacing: f64,
}

impl Default for HullConfig {
    fn default() -> Self {
        Self { ray_spacing: 20.0, concavity: 0.8, enclosure: 0.1, edge_sample_count: None, horizontal_spacing: 80.0 }
    }
}

impl HullConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.ray_spacing > 0.0 && self.ray_spacing.is_finite()) {
            return Err(Error::Config("ray_spacing must be positive".into()));
        }
        for (name, v) in [("concavity", self.concavity), ("enclosure", self.enclosure)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config(format!("{name} must lie in [0, 1]")));
            }
        }
        if !(self.horizontal_spacing > 0.0) {
            return Err(Error::Config("horizontal_spacing must be positive".into()));
        }
        Ok(())
    }

    pub fn offset(&self) -> f64 {
        self.enclosure * self.horizontal_spacing
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullPolygon {
    pub vertices: Vec<Point>,
    pub area: f64,
}

impl HullPolygon {
    fn from_ring(ring: Vec<Point>) -> Self {
        let area = signed_area(&ring).abs();
        Self { vertices: ring, area }
    }

    pub fn polygon(&self) -> Polygon {
        Polygon::new(self.vertices.clone())
    }

    pub fn perimeter(&self) -> f64 {
        self.polygon().perimeter()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.polygon().contains(p)
    }

    pub fn boundary_dist(&self, p: Point) -> f64 {
        self.polygon().boundary_dist2(p).sqrt()
    }
}

/// Extremes of one ray family: (ray coordinate, min hit, max hit).
fn scan(nodes: &[Point], segs: &[(Point, Point)], spacing: f64, horizontal: bool) -> Vec<(f64, f64, f64)> {
    // along = coordinate the ray runs at; across = coordinate along the ray
    let along = |p: Point| if horizontal { p.y } else { p.x };
    let across = |p: Point| if horizontal { p.x } else { p.y };
    let (lo, hi) = nodes.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), p| (l.min(along(*p)), h.max(along(*p))));
    let mut rays: Vec<f64> = nodes.iter().map(|p| along(*p)).collect();
    let steps = ((hi - lo) / spacing).floor() as usize;
    rays.extend((0..=steps).map(|k| lo + k as f64 * spacing));
    rays.sort_by(f64::total_cmp);
    let tol = 1e-9 * (1.0 + hi.abs().max(lo.abs()));
    rays.dedup_by(|a, b| (*a - *b).abs() <= tol);

    let mut out = Vec::with_capacity(rays.len());
    for r in rays {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for p in nodes {
            if (along(*p) - r).abs() <= tol {
                min = min.min(across(*p));
                max = max.max(across(*p));
            }
        }
        for &(a, b) in segs {
            let (da, db) = (along(a) - r, along(b) - r);
            if da == db || da * db > 0.0 {
                continue;
            }
            let t = da / (da - db);
            let c = across(a) + t * (across(b) - across(a));
            min = min.min(c);
            max = max.max(c);
        }
        if min <= max {
            out.push((r, min, max));
        }
    }
    out
}

/// Flat morphological closing with half-width `h` over irregular positions.
fn closing(pos: &[f64], w: &[f64], h: f64) -> Vec<f64> {
    let n = pos.len();
    let dilate = |y: f64| {
        let a = pos.partition_point(|&p| p < y - h - 1e-9);
        let b = pos.partition_point(|&p| p <= y + h + 1e-9);
        w[a..b].iter().copied().fold(f64::NEG_INFINITY, f64::max)
    };
    let mut out = Vec::with_capacity(n);
    let mut cand = Vec::new();
    for i in 0..n {
        let (lo, hi) = (pos[i] - h, pos[i] + h);
        cand.clear();
        cand.extend([lo, hi]);
        let a = pos.partition_point(|&p| p < lo - h);
        let b = pos.partition_point(|&p| p <= hi + h);
        for &p in &pos[a..b] {
            for c in [p - h, p + h] {
                if c > lo && c < hi {
                    cand.push(c);
                }
            }
        }
        cand.sort_by(f64::total_cmp);
        let mut v = dilate(cand[0]);
        for c in cand.windows(2) {
            v = v.min(dilate(c[1])).min(dilate((c[0] + c[1]) / 2.0));
        }
        out.push(v.max(w[i]));
    }
    out
}

/// Least concave majorant of the samples, evaluated at each position.
fn concave_majorant(pos: &[f64], w: &[f64]) -> Vec<f64> {
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for (&x, &y) in pos.iter().zip(w) {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            if (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1) >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    let mut k = 0;
    pos.iter()
        .map(|&x| {
            if hull.len() == 1 {
                return hull[0].1;
            }
            while k + 2 < hull.len() && hull[k + 1].0 <= x {
                k += 1;
            }
            let (x1, y1) = hull[k];
            let (x2, y2) = hull[k + 1];
            y1 + (y2 - y1) * (x - x1) / (x2 - x1)
        })
        .collect()
}

fn shape_profile(pos: &[f64], w: &[f64], cfg: &HullConfig, extent: f64) -> Vec<f64> {
    let closed = closing(pos, w, cfg.horizontal_spacing / 2.0);
    let env = concave_majorant(pos, w);
    let depth = (1.0 - cfg.concavity) * extent;
    closed.iter().zip(&env).map(|(c, e)| c.max(e - depth) + cfg.offset()).collect()
}

/// Monotone polygon from per-ray extremes, capped at both ends by the offset.
fn monotone_polygon(rays: &[(f64, f64, f64)], cfg: &HullConfig, extent: f64, horizontal: bool) -> Polygon {
    let pos: Vec<f64> = rays.iter().map(|r| r.0).collect();
    let lo: Vec<f64> = shape_profile(&pos, &rays.iter().map(|r| -r.1).collect::<Vec<_>>(), cfg, extent)
        .into_iter()
        .map(|v| -v)
        .collect();
    let hi = shape_profile(&pos, &rays.iter().map(|r| r.2).collect::<Vec<_>>(), cfg, extent);
    let e = cfg.offset();
    let mk = |along: f64, across: f64| if horizontal { Point::new(across, along) } else { Point::new(along, across) };
    let n = pos.len();
    let mut ring = Vec::with_capacity(2 * n + 4);
    ring.push(mk(pos[0] - e, lo[0]));
    for i in 0..n {
        ring.push(mk(pos[i], lo[i]));
    }
    ring.push(mk(pos[n - 1] + e, lo[n - 1]));
    ring.push(mk(pos[n - 1] + e, hi[n - 1]));
    for i in (0..n).rev() {
        ring.push(mk(pos[i], hi[i]));
    }
    ring.push(mk(pos[0] - e, hi[0]));
    Polygon::new(dedup_ring(ring))
}

fn dedup_ring(ring: Vec<Point>) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(ring.len());
    for p in ring {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Drops vertices whose neighbours are collinear with them.
pub(crate) fn simplify_ring(ring: Vec<Point>) -> Vec<Point> {
    let mut pts = dedup_ring(ring);
    let scale = pts.iter().fold(1.0f64, |m, p| m.max(p.x.abs()).max(p.y.abs()));
    let tol = 1e-9 * scale;
    loop {
        let n = pts.len();
        if n <= 3 {
            return pts;
        }
        let mut keep = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b, c) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
            let ac = c - a;
            let len = ac.norm();
            let straight = len > 0.0 && (b - a).cross(ac).abs() / len <= tol && (b - a).dot(ac) >= 0.0 && (b - c).dot(a - c) >= 0.0;
            if !straight {
                keep.push(b);
            }
        }
        if keep.len() == n {
            return pts;
        }
        pts = keep;
    }
}

fn offset_box(lo: Point, hi: Point, e: f64) -> HullPolygon {
    let e = if e > 0.0 { e } else { 1e-3 };
    HullPolygon::from_ring(Polygon::rect(Point::new(lo.x - e, lo.y - e), Point::new(hi.x + e, hi.y + e)).exterior)
}

pub fn concave_hull(layout: &Layout, cfg: &HullConfig) -> Result<HullPolygon> {
    hull_of(&layout.points(), &layout.segments(), cfg)
}

/// Hull of a drawing given as node points and edge segments.
pub fn hull_of(nodes: &[Point], segs: &[(Point, Point)], cfg: &HullConfig) -> Result<HullPolygon> {
    let (lo, hi) = bbox(nodes.iter().copied()).ok_or(Error::EmptyLayout)?;
    let e = cfg.offset();
    if nodes.len() <= 2 || e <= 0.0 {
        return Ok(offset_box(lo, hi, e));
    }
    let rows = scan(nodes, segs, cfg.ray_spacing, true);
    let cols = scan(nodes, segs, cfg.ray_spacing, false);
    let (width, height) = (hi.x - lo.x, hi.y - lo.y);
    let p_h = monotone_polygon(&rows, cfg, width, true);
    let p_v = monotone_polygon(&cols, cfg, height, false);
    let corners: Vec<Point> = nodes
        .iter()
        .flat_map(|p| [(-e, -e), (e, -e), (e, e), (-e, e)].map(|(dx, dy)| Point::new(p.x + dx, p.y + dy)))
        .collect();
    let ch = Polygon::new(convex_hull(&corners));

    let scale = hi.x.abs().max(hi.y.abs()).max(lo.x.abs()).max(lo.y.abs()).max(1.0);
    let covers_all = |ring: &[Point]| {
        let poly = Polygon::new(ring.to_vec());
        nodes.iter().all(|p| poly.covers(*p, 1e-6 * scale))
            && rows.iter().all(|r| {
                poly.covers(Point::new(r.1, r.0), 1e-6 * scale) && poly.covers(Point::new(r.2, r.0), 1e-6 * scale)
            })
    };
    let accept = |ring: Option<Vec<Point>>| -> Option<Vec<Point>> {
        let ring = simplify_ring(ring?);
        (ring.len() >= 3 && ring_is_simple(&ring) && covers_all(&ring)).then_some(ring)
    };
    let ring = accept(intersect_simple(&[&p_h, &p_v, &ch]))
        .or_else(|| accept(intersect_simple(&[&p_h, &ch])))
        .or_else(|| accept(Some(p_h.exterior.clone())));
    Ok(match ring {
        Some(r) => HullPolygon::from_ring(r),
        None => offset_box(lo, hi, e),
    })
}
