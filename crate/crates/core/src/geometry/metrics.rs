use serde::{Deserialize, Serialize};

use super::arrangement::overlay_areas;
use super::polygon::{ring_edges, signed_area};
use super::{orient, HullPolygon, Point};
use crate::error::{Error, Result};
use crate::layout::Layout;

/// Convex hull by monotone chain, counter-clockwise, without collinear points.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaResult {
    pub area: f64,
    pub degenerate: bool,
}

pub fn convex_hull_area_of(points: &[Point]) -> AreaResult {
    let h = convex_hull(points);
    let area = if h.len() < 3 { 0.0 } else { signed_area(&h).abs() };
    AreaResult { area, degenerate: area <= 0.0 }
}

pub fn convex_hull_area(layout: &Layout) -> AreaResult {
    convex_hull_area_of(&layout.points())
}

/// Ring vertices plus points every `spacing` along each edge.
pub fn boundary_samples(ring: &[Point], spacing: f64) -> Vec<Point> {
    let mut out = Vec::new();
    for (a, b) in ring_edges(ring) {
        let k = (a.dist(b) / spacing).ceil().max(1.0) as usize;
        for i in 0..k {
            out.push(a.lerp(b, i as f64 / k as f64));
        }
    }
    out
}

fn directed(a: &[Point], b: &[Point]) -> f64 {
    let mut worst = 0.0f64;
    // consecutive samples have nearby nearest neighbours, so start there
    let mut hint = 0;
    for &p in a {
        let mut best = f64::INFINITY;
        let start = hint;
        let (tail, head) = b.split_at(start);
        for (k, &q) in head.iter().chain(tail).enumerate() {
            let d = p.dist2(q);
            if d < best {
                best = d;
                hint = (start + k) % b.len();
                if best <= worst {
                    break;
                }
            }
        }
        worst = worst.max(best);
    }
    worst
}

/// Symmetric Hausdorff distance between two sample sets.
pub fn hausdorff_samples(a: &[Point], b: &[Point]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() && b.is_empty() { 0.0 } else { f64::INFINITY };
    }
    directed(a, b).max(directed(b, a)).sqrt()
}

/// Hausdorff distance over boundary samples spaced `spacing` apart.
pub fn hausdorff(a: &HullPolygon, b: &HullPolygon, spacing: f64) -> f64 {
    hausdorff_samples(&boundary_samples(&a.vertices, spacing), &boundary_samples(&b.vertices, spacing))
}

/// Hausdorff distance divided by the perimeter of `a`.
pub fn normalized_hausdorff(a: &HullPolygon, b: &HullPolygon, spacing: f64) -> Result<f64> {
    let size = a.perimeter();
    if !(size > 0.0) {
        return Err(Error::Degenerate("hull has zero perimeter"));
    }
    Ok(hausdorff(a, b, spacing) / size)
}

pub fn intersection_over_union(a: &HullPolygon, b: &HullPolygon) -> Result<f64> {
    let (inter, union) = overlay_areas(&a.polygon(), &b.polygon());
    if !(union > 0.0) {
        return Err(Error::Degenerate("union of hulls has zero area"));
    }
    Ok((inter / union).clamp(0.0, 1.0))
}
