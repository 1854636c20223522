//! Drawing-quality criteria, each normalized to [0, 1].

use std::collections::HashMap;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{segments_cross, Point};
use crate::layout::Layout;

/// One value per criterion. Used both for weights and for scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Criteria {
    pub crossings: f64,
    pub angular_resolution: f64,
    pub edge_bends: f64,
    pub edge_length_uniformity: f64,
    pub symmetry: f64,
}

pub type AestheticWeights = Criteria;

impl Default for Criteria {
    fn default() -> Self {
        Self::splat(1.0)
    }
}

impl Criteria {
    pub const fn splat(v: f64) -> Self {
        Self { crossings: v, angular_resolution: v, edge_bends: v, edge_length_uniformity: v, symmetry: v }
    }

    pub fn values(&self) -> [f64; 5] {
        [self.crossings, self.angular_resolution, self.edge_bends, self.edge_length_uniformity, self.symmetry]
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.values();
        if v.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::Config("aesthetic weights must be non-negative".into()));
        }
        if v.iter().sum::<f64>() <= 0.0 {
            return Err(Error::Config("aesthetic weights must not all be zero".into()));
        }
        Ok(())
    }

    /// Σ wᵢvᵢ / Σ wᵢ.
    pub fn weighted_mean(&self, weights: &Criteria) -> f64 {
        let (v, w) = (self.values(), weights.values());
        let num: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        num / w.iter().sum::<f64>()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AestheticsScore {
    pub per_criterion: Criteria,
    pub average: f64,
    pub raw_crossings: usize,
}

/// Proper crossings between edges that share no endpoint.
pub fn count_crossings_indexed(points: &[Point], edges: &[(usize, usize)]) -> usize {
    let mut c = 0;
    for (i, &(a, b)) in edges.iter().enumerate() {
        let (pa, pb) = (points[a], points[b]);
        let (lo_x, hi_x) = (pa.x.min(pb.x), pa.x.max(pb.x));
        let (lo_y, hi_y) = (pa.y.min(pb.y), pa.y.max(pb.y));
        for &(u, v) in &edges[i + 1..] {
            if u == a || u == b || v == a || v == b {
                continue;
            }
            let (pu, pv) = (points[u], points[v]);
            if pu.x.max(pv.x) < lo_x || pu.x.min(pv.x) > hi_x || pu.y.max(pv.y) < lo_y || pu.y.min(pv.y) > hi_y {
                continue;
            }
            if segments_cross(pa, pb, pu, pv) {
                c += 1;
            }
        }
    }
    c
}

struct Indexed {
    points: Vec<Point>,
    edges: Vec<(usize, usize)>,
}

fn index(layout: &Layout) -> Indexed {
    let mut at = HashMap::new();
    let mut points = Vec::with_capacity(layout.positions.len());
    for (i, (n, p)) in layout.positions.iter().enumerate() {
        at.insert(n, i);
        points.push(*p);
    }
    let edges = layout
        .graph
        .edges()
        .iter()
        .filter_map(|e| Some((*at.get(&e.source)?, *at.get(&e.target)?)))
        .collect();
    Indexed { points, edges }
}

pub fn count_edge_crossings(layout: &Layout) -> usize {
    let ix = index(layout);
    count_crossings_indexed(&ix.points, &ix.edges)
}

pub fn score_aesthetics(layout: &Layout, weights: &AestheticWeights, horizontal_spacing: f64) -> AestheticsScore {
    let ix = index(layout);
    let n = ix.points.len();
    let m = ix.edges.len();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, &(a, b)) in ix.edges.iter().enumerate() {
        incident[a].push(k);
        incident[b].push(k);
    }

    let raw = count_crossings_indexed(&ix.points, &ix.edges);
    let adjacent: usize = incident.iter().map(|l| l.len() * l.len().saturating_sub(1) / 2).sum();
    let c_max = (m * m.saturating_sub(1) / 2).saturating_sub(adjacent);
    let crossings = if c_max == 0 {
        if raw == 0 { 1.0 } else { 0.0 }
    } else {
        (1.0 - raw as f64 / c_max as f64).clamp(0.0, 1.0)
    };

    let mut ratios = Vec::new();
    for (v, inc) in incident.iter().enumerate() {
        if inc.len() < 2 {
            continue;
        }
        let mut angles: Vec<f64> = inc
            .iter()
            .map(|&k| {
                let (a, b) = ix.edges[k];
                let other = if a == v { b } else { a };
                let d = ix.points[other] - ix.points[v];
                d.y.atan2(d.x)
            })
            .collect();
        angles.sort_by(f64::total_cmp);
        let mut min_gap = angles[0] + TAU - angles[angles.len() - 1];
        for w in angles.windows(2) {
            min_gap = min_gap.min(w[1] - w[0]);
        }
        ratios.push((min_gap / (TAU / inc.len() as f64)).clamp(0.0, 1.0));
    }
    let angular_resolution = if ratios.is_empty() { 1.0 } else { ratios.iter().sum::<f64>() / ratios.len() as f64 };

    let lengths: Vec<f64> = ix.edges.iter().map(|&(a, b)| ix.points[a].dist(ix.points[b])).collect();
    let edge_length_uniformity = if lengths.len() < 2 {
        1.0
    } else {
        let mean = lengths.iter().sum::<f64>() / lengths.len() as f64;
        if mean <= 0.0 {
            1.0
        } else {
            let var = lengths.iter().map(|l| (l - mean).powi(2)).sum::<f64>() / lengths.len() as f64;
            (1.0 - var.sqrt() / mean).clamp(0.0, 1.0)
        }
    };

    let symmetry = symmetry(&ix.points, horizontal_spacing / 2.0);

    let per_criterion = Criteria { crossings, angular_resolution, edge_bends: 1.0, edge_length_uniformity, symmetry };
    AestheticsScore { average: per_criterion.weighted_mean(weights), per_criterion, raw_crossings: raw }
}

/// Fraction of nodes whose mirror image has a node within `tol`, for the
/// best vertical axis. Candidate axes run through midpoints of node pairs
/// sharing a row.
fn symmetry(points: &[Point], tol: f64) -> f64 {
    let n = points.len();
    if n == 0 {
        return 1.0;
    }
    let tol2 = tol * tol;
    // twice the axis coordinate
    let mut axes: Vec<f64> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i..] {
            if (p.y - q.y).abs() <= tol {
                axes.push(p.x + q.x);
            }
        }
    }
    axes.sort_by(f64::total_cmp);
    axes.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);
    let mut best = 0;
    for axis in axes {
        let hits = points
            .iter()
            .filter(|p| {
                let mirror = Point::new(axis - p.x, p.y);
                points.iter().any(|q| q.dist2(mirror) <= tol2)
            })
            .count();
        best = best.max(hits);
    }
    best as f64 / n as f64
}

/// Accept iff `after ≥ before · (1 − tolerance)`.
pub fn accepts(before: f64, after: f64, tolerance: f64) -> bool {
    after >= before * (1.0 - tolerance)
}

pub fn guard(before: &AestheticsScore, after: &AestheticsScore, tolerance: f64) -> bool {
    accepts(before.average, after.average, tolerance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DirectedGraph;
    use crate::layout::{layout_graph, LayoutConfig};
    use std::collections::BTreeMap;

    fn fixed(points: &[(&str, f64, f64)], edges: &[(&str, &str)]) -> Layout {
        let g = DirectedGraph::from_pairs(&points.iter().map(|p| p.0).collect::<Vec<_>>(), edges);
        let positions = points.iter().map(|(n, x, y)| ((*n).into(), Point::new(*x, *y))).collect();
        Layout { graph: g, positions, mental_map: BTreeMap::new() }
    }

    #[test]
    fn k22_crossing_drawing() {
        let l = fixed(
            &[("a", 0., 0.), ("b", 80., 0.), ("c", 0., 200.), ("d", 80., 200.)],
            &[("a", "d"), ("b", "c"), ("a", "c"), ("b", "d")],
        );
        assert_eq!(count_edge_crossings(&l), 1);
    }

    #[test]
    fn tree_has_no_crossings() {
        let g = DirectedGraph::from_pairs(&[], &[("A", "B"), ("A", "C"), ("B", "D"), ("C", "E")]);
        let l = layout_graph(&g, &LayoutConfig::default()).unwrap();
        assert_eq!(count_edge_crossings(&l), 0);
    }

    #[test]
    fn single_edge_scores_one() {
        let g = DirectedGraph::from_pairs(&[], &[("A", "B")]);
        let l = layout_graph(&g, &LayoutConfig::default()).unwrap();
        let s = score_aesthetics(&l, &AestheticWeights::default(), 80.0);
        assert_eq!(s.average, 1.0);
    }

    #[test]
    fn weighted_mean_identity() {
        assert_eq!(Criteria::splat(0.5).weighted_mean(&Criteria::default()), 0.5);
        let w = Criteria { crossings: 3.0, ..Criteria::splat(0.0) };
        let v = Criteria { crossings: 0.25, ..Criteria::splat(1.0) };
        assert_eq!(v.weighted_mean(&w), 0.25);
    }

    #[test]
    fn guard_examples() {
        assert!(accepts(0.70, 0.64, 0.10));
        assert!(!accepts(0.70, 0.62, 0.10));
        assert!(accepts(0.7, 0.7, 0.0));
    }

    #[test]
    fn star_angular_resolution_is_perfect() {
        let l = fixed(
            &[("c", 0., 0.), ("n", 0., -1.), ("s", 0., 1.), ("e", 1., 0.), ("w", -1., 0.)],
            &[("c", "n"), ("c", "s"), ("c", "e"), ("c", "w")],
        );
        let s = score_aesthetics(&l, &AestheticWeights::default(), 80.0);
        assert!((s.per_criterion.angular_resolution - 1.0).abs() < 1e-12);
        assert_eq!(s.per_criterion.symmetry, 1.0);
    }

    #[test]
    fn symmetry_follows_the_best_axis() {
        let row = |xs: &[f64]| xs.iter().map(|&x| Point::new(x, 0.0)).collect::<Vec<_>>();
        assert_eq!(symmetry(&row(&[0.0, 80.0, 160.0]), 40.0), 1.0);
        // a split keeps the larger mirrored group intact
        assert_eq!(symmetry(&row(&[-80.0, 160.0, 240.0, 320.0, 400.0]), 40.0), 0.8);
        assert_eq!(symmetry(&[Point::new(0.0, 0.0), Point::new(10.0, 200.0)], 40.0), 1.0);
    }

    #[test]
    fn invalid_weights_rejected() {
        assert!(Criteria::splat(0.0).validate().is_err());
        assert!(Criteria { symmetry: -1.0, ..Criteria::default() }.validate().is_err());
    }
}
