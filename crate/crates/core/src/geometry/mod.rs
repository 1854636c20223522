//! Planar geometry kernel used by the hull, white-space and metric code.

pub mod arrangement;
pub mod hull;
pub mod metrics;
pub mod polygon;
pub mod polylabel;
pub mod whitespace;

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

pub use hull::{concave_hull, HullConfig, HullPolygon};
pub use metrics::{
    convex_hull, convex_hull_area, hausdorff, intersection_over_union, normalized_hausdorff,
    AreaResult,
};
pub use polygon::Polygon;
pub use polylabel::{largest_inscribed_circle, InscribedCircle};
pub use whitespace::{white_space_faces, Face, Rect, WhiteSpaceReport};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(self, o: Point) -> f64 {
        self.dist2(o).sqrt()
    }

    pub fn dist2(self, o: Point) -> f64 {
        let dx = self.x - o.x;
        let dy = self.y - o.y;
        dx * dx + dy * dy
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        Point::new(self.x + (o.x - self.x) * t, self.y + (o.y - self.y) * t)
    }

    pub fn midpoint(self, o: Point) -> Point {
        self.lerp(o, 0.5)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

/// Signed area of the triangle (a, b, c), doubled. Positive for a left turn.
pub fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

/// True iff the open segments properly cross: each segment's endpoints lie
/// strictly on opposite sides of the other's supporting line.
pub fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

pub fn point_segment_dist2(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist2(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist2(a + ab * t)
}

pub fn point_segment_dist(p: Point, a: Point, b: Point) -> f64 {
    point_segment_dist2(p, a, b).sqrt()
}

/// Axis-aligned bounding box of a point set; `None` when empty.
pub fn bbox(points: impl IntoIterator<Item = Point>) -> Option<(Point, Point)> {
    let mut it = points.into_iter();
    let first = it.next()?;
    let (mut lo, mut hi) = (first, first);
    for p in it {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    Some((lo, hi))
}
