use crate::geometry::metrics::convex_hull_area;
use crate::geometry::whitespace::white_space_around;
use crate::geometry::{bbox, HullConfig, InscribedCircle, Point, Rect, WhiteSpaceReport};
use crate::layout::Layout;

use super::pipeline::{coordinate_key, Pipeline};
use super::{Approach, Change, ChangeElement, EnhancementKind, EnhancementOutcome, Reason};

/// Faces and circles around an inner change, in the drawing that holds it.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerGeometry {
    pub rect: Rect,
    pub pivot: Point,
    pub report: WhiteSpaceReport,
    pub convex_area: f64,
}

impl InnerGeometry {
    pub fn large(&self) -> Option<InscribedCircle> {
        self.report.circle(self.report.circle_large)
    }

    pub fn opposite(&self) -> Option<InscribedCircle> {
        self.report.circle(self.report.circle_opposite)
    }

    /// Circle area of the large face scaled by the area ratio of the smaller
    /// to the larger of the two circles at the change, over `hull_area`.
    pub fn relative_whitespace(&self, hull_area: f64) -> f64 {
        let Some(large) = self.large() else {
            return 0.0;
        };
        if !(hull_area > 0.0) {
            return 0.0;
        }
        let (min, max) = match (self.report.circle(self.report.circle_min), self.report.circle(self.report.circle_max)) {
            (Some(a), Some(b)) => (a.area(), b.area()),
            _ => (1.0, 1.0),
        };
        let ratio = if max > 0.0 { min / max } else { 0.0 };
        large.area() * ratio / hull_area
    }
}

/// Builds the rectangle for a change (the edge's endpoints, or the node and
/// its neighbours, padded to at least one node spacing per side) and finds the
/// adjacent faces.
pub fn inner_geometry(view: &Layout, change: &Change, hull_cfg: &HullConfig) -> Option<InnerGeometry> {
    let mut segs: Vec<(Point, Point)> = Vec::new();
    let (corners, pivot) = match &change.element {
        ChangeElement::Edge { edge } => {
            let (a, b) = view.segment(edge)?;
            segs.push((a, b));
            (vec![a, b], a.midpoint(b))
        }
        ChangeElement::Node { id } => {
            let p = view.position(id)?;
            segs.push((p, p));
            for e in &change.incident {
                if let Some(s) = view.segment(e) {
                    segs.push(s);
                }
            }
            let mut pts = vec![p];
            for e in view.graph.incident_edges(id) {
                let other = if &e.source == id { &e.target } else { &e.source };
                pts.extend(view.position(other));
            }
            (pts, p)
        }
    };
    let (mut lo, mut hi) = bbox(corners)?;
    let min = hull_cfg.horizontal_spacing;
    for (l, h) in [(&mut lo.x, &mut hi.x), (&mut lo.y, &mut hi.y)] {
        let grow = (min - (*h - *l)).max(0.0) / 2.0;
        *l -= grow;
        *h += grow;
    }
    let rect = Rect::new(lo, hi);
    let report = white_space_around(&view.segments(), &rect, &segs, pivot, hull_cfg.ray_spacing / 2.0);
    report.circle_large?;
    Some(InnerGeometry { rect, pivot, report, convex_area: convex_hull_area(view).area })
}

/// Per-node displacement pushing nodes away from each circle centre. Each
/// circle comes with its share `f` of the adaption `a`. The proportional
/// approaches share one normaliser across both axes, so WS4 scales about the
/// centre.
pub fn displacement(points: &[Point], circles: &[(InscribedCircle, f64)], approach: Approach, a: f64) -> Vec<Point> {
    let mut out = vec![Point::default(); points.len()];
    for &(c, f) in circles {
        let cx = c.center.x;
        let cy = c.center.y;
        let mut m = points.iter().map(|p| (p.x - cx).abs()).fold(0.0, f64::max);
        if approach.vertical() {
            m = points.iter().map(|p| (p.y - cy).abs()).fold(m, f64::max);
        }
        let shift = |v: f64, centre: f64, max: f64| {
            if approach.proportional() {
                if max > 0.0 {
                    f * a * (v - centre) / max
                } else {
                    0.0
                }
            } else if v < centre {
                -f * a
            } else if v > centre {
                f * a
            } else {
                0.0
            }
        };
        for (d, p) in out.iter_mut().zip(points) {
            d.x += shift(p.x, cx, m);
            if approach.vertical() {
                d.y += shift(p.y, cy, m);
            }
        }
    }
    out
}

/// Shares of the adaption: the smaller circle receives `r_max / (r_min + r_max)`.
fn shares(large: InscribedCircle, opposite: Option<InscribedCircle>) -> Vec<(InscribedCircle, f64)> {
    match opposite {
        None => vec![(large, 1.0)],
        Some(o) => {
            let sum = large.radius + o.radius;
            if !(sum > 0.0) {
                return vec![(large, 0.5), (o, 0.5)];
            }
            vec![(large, o.radius / sum), (o, large.radius / sum)]
        }
    }
}

impl Pipeline {
    fn inner_at(&self, layout: &Layout, change: &Change) -> Option<InnerGeometry> {
        let view = self.view(layout, change.direction);
        let key = (change.clone(), coordinate_key(&view.points(), &view.segments()));
        self.inner.get_or(key, || inner_geometry(&view, change, &self.hull_cfg))
    }

    /// Large and opposite white-space circles at an inner change.
    pub fn white_space_circles(&self, layout: &Layout, change: &Change) -> Vec<InscribedCircle> {
        self.inner_at(layout, change).map(|g| g.large().into_iter().chain(g.opposite()).collect()).unwrap_or_default()
    }

    /// Relative white space at an inner change, measured in the drawing that
    /// holds the change.
    pub fn relative_whitespace(&self, layout: &Layout, change: &Change) -> f64 {
        let view = self.view(layout, change.direction);
        match self.inner_at(layout, change) {
            None => 0.0,
            Some(g) => {
                let hull = self.hull_of(&view.points(), &view.segments()).map(|h| h.area).unwrap_or(0.0);
                g.relative_whitespace(hull)
            }
        }
    }

    /// Enlarges the white space on both sides of an inner change.
    pub fn enhance_inner(&self, layout: &Layout, change: &Change, approach: Approach) -> EnhancementOutcome {
        let kind = EnhancementKind::Inner(approach);
        if self.inner_at(layout, change).is_none() {
            return EnhancementOutcome::unchanged(layout, kind, Reason::NotApplicable);
        }
        // smaller of the two circles, relative to the convex hull area
        let measure = |l: &Layout| match self.inner_at(l, change) {
            Some(g) if g.convex_area > 0.0 => {
                let large = g.large().map_or(0.0, |c| c.area());
                g.opposite().map_or(large, |c| c.area().min(large)) / g.convex_area
            }
            _ => 0.0,
        };
        let a = self.cfg.inner_adaption;
        self.iterate(layout, kind, measure, self.cfg.whitespace_threshold, |l| {
            let Some(g) = self.inner_at(l, change) else {
                return false;
            };
            let Some(large) = g.large() else {
                return false;
            };
            let circles = shares(large, g.opposite());
            let ids: Vec<_> = l.positions.keys().cloned().collect();
            let pts: Vec<Point> = l.positions.values().copied().collect();
            let d = displacement(&pts, &circles, approach, a);
            for (id, dp) in ids.iter().zip(d) {
                let p = l.positions.get_mut(id).unwrap();
                *p = *p + dp;
            }
            true
        })
    }
}
