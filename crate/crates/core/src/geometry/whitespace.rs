//! White-space faces: a rectangle subdivided by the drawing's edges, each
//! face measured by its largest inscribed circle.

use serde::{Deserialize, Serialize};

use super::arrangement::Arrangement;
use super::polylabel::{inscribed_circle_with_obstacles, DEFAULT_PRECISION};
use super::{point_segment_dist2, segments_cross, InscribedCircle, Point, Polygon};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub lo: Point,
    pub hi: Point,
}

impl Rect {
    pub fn new(lo: Point, hi: Point) -> Self {
        Self { lo, hi }
    }

    pub fn area(&self) -> f64 {
        (self.hi.x - self.lo.x) * (self.hi.y - self.lo.y)
    }

    pub fn polygon(&self) -> Polygon {
        Polygon::rect(self.lo, self.hi)
    }

    /// Liang-Barsky clip of segment `a`-`b`.
    pub fn clip(&self, a: Point, b: Point) -> Option<(Point, Point)> {
        let d = b - a;
        let (mut t0, mut t1) = (0.0f64, 1.0f64);
        for (p, q) in [
            (-d.x, a.x - self.lo.x),
            (d.x, self.hi.x - a.x),
            (-d.y, a.y - self.lo.y),
            (d.y, self.hi.y - a.y),
        ] {
            if p == 0.0 {
                if q < 0.0 {
                    return None;
                }
            } else {
                let r = q / p;
                if p < 0.0 {
                    t0 = t0.max(r);
                } else {
                    t1 = t1.min(r);
                }
            }
        }
        (t0 < t1).then(|| (a + d * t0, a + d * t1))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Face {
    pub polygon: Polygon,
    pub obstacles: Vec<(Point, Point)>,
    pub area: f64,
    pub circle: InscribedCircle,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct WhiteSpaceReport {
    pub faces: Vec<Face>,
    /// Faces touching the change, by index into `faces`.
    pub adjacent: Vec<usize>,
    pub circle_large: Option<usize>,
    pub circle_opposite: Option<usize>,
    pub circle_min: Option<usize>,
    pub circle_max: Option<usize>,
}

impl WhiteSpaceReport {
    pub fn circle(&self, i: Option<usize>) -> Option<InscribedCircle> {
        i.map(|i| self.faces[i].circle)
    }
}

/// Faces of `rect` cut by `segments`, each with its inscribed circle.
pub fn white_space_faces(segments: &[(Point, Point)], rect: &Rect) -> WhiteSpaceReport {
    let mut segs: Vec<(Point, Point)> = rect.polygon().edges().collect();
    segs.extend(segments.iter().filter_map(|&(a, b)| rect.clip(a, b)));
    let arr = Arrangement::build(&segs);
    let faces = arr
        .faces
        .iter()
        .filter_map(|f| {
            let polygon = f.polygon();
            let circle = inscribed_circle_with_obstacles(&polygon, &f.obstacles, DEFAULT_PRECISION).ok()?;
            Some(Face { polygon, obstacles: f.obstacles.clone(), area: f.area, circle })
        })
        .collect();
    WhiteSpaceReport { faces, ..Default::default() }
}

pub fn segment_dist2(a: Point, b: Point, c: Point, d: Point) -> f64 {
    if segments_cross(a, b, c, d) {
        return 0.0;
    }
    point_segment_dist2(a, c, d)
        .min(point_segment_dist2(b, c, d))
        .min(point_segment_dist2(c, a, b))
        .min(point_segment_dist2(d, a, b))
}

/// Faces of `rect` plus the circles relevant to a change. A face is adjacent
/// when its boundary comes within `tol` of the change geometry. The opposite
/// face is the adjacent one whose circle centre makes the widest angle (at
/// least 90°) with the large circle's centre about `pivot`; failing that the
/// second-largest adjacent circle.
pub fn white_space_around(
    segments: &[(Point, Point)],
    rect: &Rect,
    change: &[(Point, Point)],
    pivot: Point,
    tol: f64,
) -> WhiteSpaceReport {
    let mut report = white_space_faces(segments, rect);
    let tol2 = tol * tol;
    report.adjacent = report
        .faces
        .iter()
        .enumerate()
        .filter(|(_, f)| {
            f.polygon
                .edges()
                .chain(f.obstacles.iter().copied())
                .any(|(a, b)| change.iter().any(|&(c, d)| segment_dist2(a, b, c, d) <= tol2))
        })
        .map(|(i, _)| i)
        .collect();
    let mut by_radius = report.adjacent.clone();
    by_radius.sort_by(|&a, &b| report.faces[b].circle.radius.total_cmp(&report.faces[a].circle.radius).then(a.cmp(&b)));
    let Some(&large) = by_radius.first() else {
        return report;
    };
    report.circle_large = Some(large);
    let lc = report.faces[large].circle.center - pivot;
    let opposite = by_radius[1..]
        .iter()
        .map(|&i| {
            let c = report.faces[i].circle.center - pivot;
            let angle = lc.cross(c).atan2(lc.dot(c)).abs();
            (angle, i)
        })
        .filter(|(angle, _)| *angle >= std::f64::consts::FRAC_PI_2)
        .max_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)))
        .map(|(_, i)| i)
        .or_else(|| by_radius.get(1).copied());
    report.circle_opposite = opposite;
    let pair = [Some(large), opposite];
    let radius = |i: &usize| report.faces[*i].circle.radius;
    report.circle_min = pair.iter().flatten().min_by(|a, b| radius(a).total_cmp(&radius(b))).copied();
    report.circle_max = Some(large);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(w: f64, h: f64) -> Rect {
        Rect::new(Point::new(0.0, 0.0), Point::new(w, h))
    }

    #[test]
    fn empty_rectangle_is_one_face() {
        let r = white_space_faces(&[], &rect(4.0, 2.0));
        assert_eq!(r.faces.len(), 1);
        assert_eq!(r.faces[0].area, 8.0);
        assert!((r.faces[0].circle.radius - 1.0).abs() <= 0.5);
    }

    #[test]
    fn diagonal_gives_two_triangles() {
        let r = white_space_faces(&[(Point::new(-1.0, -0.5), Point::new(5.0, 2.5))], &rect(4.0, 2.0));
        assert_eq!(r.faces.len(), 2);
        assert!(r.faces.iter().all(|f| f.polygon.exterior.len() == 3));
        let total: f64 = r.faces.iter().map(|f| f.area).sum();
        assert!((total - 8.0).abs() < 1e-9);
    }

    #[test]
    fn clip_outside_is_none() {
        let r = rect(1.0, 1.0);
        assert!(r.clip(Point::new(2.0, 2.0), Point::new(3.0, 3.0)).is_none());
        let (a, b) = r.clip(Point::new(-1.0, 0.5), Point::new(2.0, 0.5)).unwrap();
        assert_eq!((a.x, b.x), (0.0, 1.0));
    }

    #[test]
    fn change_edge_splits_into_opposite_faces() {
        let change = (Point::new(100.0, 0.0), Point::new(100.0, 200.0));
        let r = white_space_around(&[change], &rect(200.0, 200.0), &[change], Point::new(100.0, 100.0), 10.0);
        assert_eq!(r.adjacent.len(), 2);
        let (l, o) = (r.circle_large.unwrap(), r.circle_opposite.unwrap());
        assert_ne!(l, o);
        let rl = r.faces[l].circle.radius;
        let ro = r.faces[o].circle.radius;
        assert!((rl - 50.0).abs() <= 0.5 && (ro - 50.0).abs() <= 0.5);
    }
}
