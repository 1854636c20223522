use serde::{Deserialize, Serialize};

use super::{point_segment_dist2, Point};

/// Polygon with an exterior ring and optional holes. Rings are open: the
/// closing edge from the last vertex back to the first is implicit.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Polygon {
    pub exterior: Vec<Point>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub holes: Vec<Vec<Point>>,
}

impl Polygon {
    pub fn new(exterior: Vec<Point>) -> Self {
        Self { exterior, holes: Vec::new() }
    }

    pub fn with_holes(exterior: Vec<Point>, holes: Vec<Vec<Point>>) -> Self {
        Self { exterior, holes }
    }

    pub fn rect(lo: Point, hi: Point) -> Self {
        Self::new(vec![lo, Point::new(hi.x, lo.y), hi, Point::new(lo.x, hi.y)])
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.exterior).abs() - self.holes.iter().map(|h| signed_area(h).abs()).sum::<f64>()
    }

    pub fn perimeter(&self) -> f64 {
        ring_edges(&self.exterior).map(|(a, b)| a.dist(b)).sum()
    }

    pub fn rings(&self) -> impl Iterator<Item = &Vec<Point>> {
        std::iter::once(&self.exterior).chain(self.holes.iter())
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.rings().flat_map(|r| ring_edges(r))
    }

    /// Even-odd containment over all rings; points on the boundary may go
    /// either way.
    pub fn contains(&self, p: Point) -> bool {
        self.rings().filter(|r| ring_contains(r, p)).count() % 2 == 1
    }

    pub fn boundary_dist2(&self, p: Point) -> f64 {
        self.edges().map(|(a, b)| point_segment_dist2(p, a, b)).fold(f64::INFINITY, f64::min)
    }

    /// Inside or within `tol` of the boundary.
    pub fn covers(&self, p: Point, tol: f64) -> bool {
        self.contains(p) || self.boundary_dist2(p) <= tol * tol
    }

    /// Positive inside, negative outside.
    pub fn signed_distance(&self, p: Point) -> f64 {
        let d = self.boundary_dist2(p).sqrt();
        if self.contains(p) {
            d
        } else {
            -d
        }
    }
}

pub fn ring_edges(ring: &[Point]) -> impl Iterator<Item = (Point, Point)> + '_ {
    let n = ring.len();
    (0..n).map(move |i| (ring[i], ring[(i + 1) % n]))
}

/// Shoelace area; positive for counter-clockwise rings in a y-up frame.
pub fn signed_area(ring: &[Point]) -> f64 {
    ring_edges(ring).map(|(a, b)| a.cross(b)).sum::<f64>() / 2.0
}

pub fn ring_contains(ring: &[Point], p: Point) -> bool {
    let mut inside = false;
    for (a, b) in ring_edges(ring) {
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// True iff no two non-adjacent edges of the ring intersect and no adjacent
/// pair overlaps.
pub fn ring_is_simple(ring: &[Point]) -> bool {
    let n = ring.len();
    if n < 3 {
        return false;
    }
    let edges: Vec<(Point, Point)> = ring_edges(ring).collect();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if adjacent {
                let shared = if j == i + 1 { b } else { a };
                let (p, q) = if j == i + 1 { (a, d) } else { (b, c) };
                let u = p - shared;
                let v = q - shared;
                if u.cross(v) == 0.0 && u.dot(v) > 0.0 {
                    return false;
                }
            } else if segments_touch(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

fn segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool {
    use super::orient;
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |p: Point, q: Point, r: Point| {
        orient(p, q, r) == 0.0
            && r.x >= p.x.min(q.x)
            && r.x <= p.x.max(q.x)
            && r.y >= p.y.min(q.y)
            && r.y <= p.y.max(q.y)
    };
    on(c, d, a) || on(c, d, b) || on(a, b, c) || on(a, b, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(x: f64, y: f64, s: f64) -> Polygon {
        Polygon::rect(Point::new(x, y), Point::new(x + s, y + s))
    }

    #[test]
    fn square_measures() {
        let p = sq(0.0, 0.0, 2.0);
        assert_eq!(p.area(), 4.0);
        assert_eq!(p.perimeter(), 8.0);
        assert!(p.contains(Point::new(1.0, 1.0)));
        assert!(!p.contains(Point::new(3.0, 1.0)));
        assert_eq!(p.signed_distance(Point::new(1.0, 1.0)), 1.0);
    }

    #[test]
    fn holes_subtract() {
        let p = Polygon::with_holes(sq(0.0, 0.0, 4.0).exterior, vec![sq(1.0, 1.0, 2.0).exterior]);
        assert_eq!(p.area(), 12.0);
        assert!(!p.contains(Point::new(2.0, 2.0)));
        assert!(p.contains(Point::new(0.5, 0.5)));
    }

    #[test]
    fn simplicity() {
        assert!(ring_is_simple(&sq(0.0, 0.0, 1.0).exterior));
        let bow = vec![Point::new(0., 0.), Point::new(1., 1.), Point::new(1., 0.), Point::new(0., 1.)];
        assert!(!ring_is_simple(&bow));
    }
}
