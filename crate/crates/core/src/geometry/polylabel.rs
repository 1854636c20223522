//! Pole of inaccessibility by quadtree refinement with a best-first queue.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::polygon::signed_area;
use super::{point_segment_dist2, Point, Polygon};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InscribedCircle {
    pub center: Point,
    pub radius: f64,
}

impl InscribedCircle {
    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.radius * self.radius
    }
}

struct Cell {
    c: Point,
    h: f64,
    d: f64,
    max: f64,
}

impl Cell {
    fn new(c: Point, h: f64, dist: &impl Fn(Point) -> f64) -> Self {
        let d = dist(c);
        Self { c, h, d, max: d + h * std::f64::consts::SQRT_2 }
    }
}

impl PartialEq for Cell {
    fn eq(&self, o: &Self) -> bool {
        self.max == o.max
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Cell {
    fn cmp(&self, o: &Self) -> Ordering {
        self.max.total_cmp(&o.max)
    }
}

pub fn largest_inscribed_circle(polygon: &Polygon) -> Result<InscribedCircle> {
    inscribed_circle_with_obstacles(polygon, &[], DEFAULT_PRECISION)
}

/// Largest circle inside `polygon` that also avoids every obstacle segment.
pub fn inscribed_circle_with_obstacles(
    polygon: &Polygon,
    obstacles: &[(Point, Point)],
    precision: f64,
) -> Result<InscribedCircle> {
    if polygon.exterior.len() < 3 || signed_area(&polygon.exterior).abs() <= 0.0 {
        return Err(Error::Degenerate("polygon has no area"));
    }
    let (lo, hi) = super::bbox(polygon.exterior.iter().copied()).unwrap();
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let size = w.min(h);
    if size <= 0.0 {
        return Err(Error::Degenerate("polygon has no area"));
    }
    let dist = |p: Point| {
        let mut d2 = polygon.boundary_dist2(p);
        for &(a, b) in obstacles {
            d2 = d2.min(point_segment_dist2(p, a, b));
        }
        let d = d2.sqrt();
        if polygon.contains(p) {
            d
        } else {
            -d
        }
    };

    let half = size / 2.0;
    let mut queue = BinaryHeap::new();
    let mut x = lo.x;
    while x < hi.x {
        let mut y = lo.y;
        while y < hi.y {
            queue.push(Cell::new(Point::new(x + half, y + half), half, &dist));
            y += size;
        }
        x += size;
    }
    let mut best = Cell::new(centroid(&polygon.exterior), 0.0, &dist);
    let centre = Cell::new(lo.midpoint(hi), 0.0, &dist);
    if centre.d > best.d {
        best = centre;
    }
    while let Some(cell) = queue.pop() {
        if cell.max - best.d <= precision {
            break;
        }
        let h = cell.h / 2.0;
        for (dx, dy) in [(-h, -h), (h, -h), (-h, h), (h, h)] {
            queue.push(Cell::new(Point::new(cell.c.x + dx, cell.c.y + dy), h, &dist));
        }
        if cell.d > best.d {
            best = cell;
        }
    }
    Ok(InscribedCircle { center: best.c, radius: best.d.max(0.0) })
}

fn centroid(ring: &[Point]) -> Point {
    let n = ring.len();
    let (mut cx, mut cy, mut a) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let (p, q) = (ring[i], ring[(i + 1) % n]);
        let f = p.cross(q);
        cx += (p.x + q.x) * f;
        cy += (p.y + q.y) * f;
        a += f * 3.0;
    }
    if a == 0.0 {
        ring[0]
    } else {
        Point::new(cx / a, cy / a)
    }
}
