use crate::error::Result;
use crate::geometry::hull::hull_of;
use crate::geometry::{HullConfig, HullPolygon, Point};
use crate::layout::Layout;

use super::ChangeElement;

/// Sample points of an edge: its endpoints plus every crossing with the ray
/// grid anchored at `origin`, or `edge_sample_count` evenly spaced points.
pub fn edge_samples(a: Point, b: Point, origin: Point, cfg: &HullConfig) -> Vec<Point> {
    if let Some(k) = cfg.edge_sample_count {
        let k = k.max(2);
        return (0..k).map(|i| a.lerp(b, i as f64 / (k - 1) as f64)).collect();
    }
    let mut out = vec![a, b];
    let s = cfg.ray_spacing;
    for (lo, hi, o, horizontal) in [(a.y.min(b.y), a.y.max(b.y), origin.y, true), (a.x.min(b.x), a.x.max(b.x), origin.x, false)] {
        if hi == lo {
            continue;
        }
        let mut k = ((lo - o) / s).ceil();
        while o + k * s <= hi {
            let r = o + k * s;
            let t = if horizontal { (r - a.y) / (b.y - a.y) } else { (r - a.x) / (b.x - a.x) };
            out.push(a.lerp(b, t));
            k += 1.0;
        }
    }
    out
}

/// True iff the drawing's hull changes when the element is taken away: a
/// node together with its edges, an edge on its own.
pub fn is_outer_shape_relevant(layout: &Layout, element: &ChangeElement, hull: &HullPolygon, cfg: &HullConfig) -> bool {
    relevant_with(layout, element, hull, |nodes, segs| hull_of(nodes, segs, cfg))
}

pub(crate) fn relevant_with(
    layout: &Layout,
    element: &ChangeElement,
    hull: &HullPolygon,
    hull_of: impl Fn(&[Point], &[(Point, Point)]) -> Result<HullPolygon>,
) -> bool {
    let (nodes, segs): (Vec<Point>, Vec<(Point, Point)>) = match element {
        ChangeElement::Node { id } => {
            if layout.position(id).is_none() {
                return false;
            }
            let nodes = layout.positions.iter().filter(|(n, _)| *n != id).map(|(_, p)| *p).collect();
            let segs = layout.graph.edges().iter().filter(|e| !e.touches(id)).filter_map(|e| layout.segment(e)).collect();
            (nodes, segs)
        }
        ChangeElement::Edge { edge } => {
            if layout.segment(edge).is_none() {
                return false;
            }
            let segs = layout.graph.edges().iter().filter(|e| *e != edge).filter_map(|e| layout.segment(e)).collect();
            (layout.points(), segs)
        }
    };
    if nodes.is_empty() {
        return true;
    }
    match hull_of(&nodes, &segs) {
        Ok(without) => !same_ring(&without.vertices, &hull.vertices),
        Err(_) => true,
    }
}

fn same_ring(a: &[Point], b: &[Point]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(p, q)| p.dist2(*q) <= 1e-12)
}
