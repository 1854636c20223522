//! Reference answers shared by the oracle suite and the acceptance run.
#![allow(dead_code)]

use std::collections::BTreeMap;

use dagshape_core::layout::{assign_coordinates, assign_layers_longest_path};
use dagshape_core::{count_edge_crossings, DirectedGraph, HullPolygon, Layout, LayoutConfig, NodeId, Point};

/// Interior intersection by solving a + t(b - a) = c + u(d - c) over exact
/// rationals; the test coordinates are integers.
pub fn crossing_oracle(a: Point, b: Point, c: Point, d: Point) -> bool {
    let i = |v: f64| {
        assert_eq!(v.fract(), 0.0, "oracle needs integer coordinates");
        v as i128
    };
    let (ax, ay, bx, by, cx, cy, dx, dy) = (i(a.x), i(a.y), i(b.x), i(b.y), i(c.x), i(c.y), i(d.x), i(d.y));
    let (rx, ry, sx, sy) = (bx - ax, by - ay, dx - cx, dy - cy);
    let den = rx * sy - ry * sx;
    if den == 0 {
        return false;
    }
    let (qx, qy) = (cx - ax, cy - ay);
    let t = qx * sy - qy * sx;
    let u = qx * ry - qy * rx;
    let inside = |num: i128| if den > 0 { num > 0 && num < den } else { num < 0 && num > den };
    inside(t) && inside(u)
}

pub fn oracle_crossings(l: &Layout) -> usize {
    let edges: Vec<_> = l.graph.edges().iter().collect();
    let mut count = 0;
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (e, f) = (edges[i], edges[j]);
            if e.source == f.source || e.source == f.target || e.target == f.source || e.target == f.target {
                continue;
            }
            let (a, b) = l.segment(e).unwrap();
            let (c, d) = l.segment(f).unwrap();
            if crossing_oracle(a, b, c, d) {
                count += 1;
            }
        }
    }
    count
}

pub fn longest_path_dp(g: &DirectedGraph) -> BTreeMap<NodeId, usize> {
    fn depth(n: &NodeId, g: &DirectedGraph, memo: &mut BTreeMap<NodeId, usize>) -> usize {
        if let Some(&d) = memo.get(n) {
            return d;
        }
        let preds: Vec<NodeId> = g.edges().iter().filter(|e| &e.target == n).map(|e| e.source.clone()).collect();
        let d = preds.iter().map(|p| depth(p, g, memo) + 1).max().unwrap_or(0);
        memo.insert(n.clone(), d);
        d
    }
    let mut memo = BTreeMap::new();
    for n in g.nodes() {
        depth(n, g, &mut memo);
    }
    memo
}

/// Crossings of the layering with every layer in identifier order.
pub fn initial_crossings(g: &DirectedGraph, cfg: &LayoutConfig) -> usize {
    let layering = assign_layers_longest_path(g).unwrap();
    let depth = layering.values().max().map_or(0, |d| d + 1);
    let mut initial = vec![Vec::new(); depth];
    for n in g.nodes() {
        initial[layering[n]].push(n.clone());
    }
    count_edge_crossings(&assign_coordinates(g, &layering, &initial, cfg).unwrap())
}

pub fn inside(ring: &[Point], p: Point) -> bool {
    let mut odd = false;
    let mut j = ring.len() - 1;
    for i in 0..ring.len() {
        let (a, b) = (ring[i], ring[j]);
        if (a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x {
            odd = !odd;
        }
        j = i;
    }
    odd
}

pub fn dist_to_segment(p: Point, a: Point, b: Point) -> f64 {
    let (vx, vy) = (b.x - a.x, b.y - a.y);
    let len2 = vx * vx + vy * vy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.x - a.x) * vx + (p.y - a.y) * vy) / len2).clamp(0.0, 1.0) };
    ((p.x - a.x - t * vx).powi(2) + (p.y - a.y - t * vy).powi(2)).sqrt()
}

pub fn grid_radius(ring: &[Point], step: f64) -> f64 {
    let (mut lo, mut hi) = (ring[0], ring[0]);
    for p in ring {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let mut best = 0.0f64;
    let mut x = lo.x;
    while x <= hi.x {
        let mut y = lo.y;
        while y <= hi.y {
            let p = Point::new(x, y);
            if inside(ring, p) {
                let d = (0..ring.len())
                    .map(|i| dist_to_segment(p, ring[i], ring[(i + 1) % ring.len()]))
                    .fold(f64::INFINITY, f64::min);
                best = best.max(d);
            }
            y += step;
        }
        x += step;
    }
    best
}

pub fn brute_hausdorff(a: &[Point], b: &[Point]) -> f64 {
    let directed = |a: &[Point], b: &[Point]| {
        a.iter()
            .map(|p| b.iter().map(|q| (p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a)).sqrt()
}

pub fn square(x: f64, y: f64, w: f64, h: f64) -> HullPolygon {
    HullPolygon {
        vertices: vec![Point::new(x, y), Point::new(x + w, y), Point::new(x + w, y + h), Point::new(x, y + h)],
        area: w * h,
    }
}

