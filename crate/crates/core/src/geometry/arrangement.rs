//! Planar arrangement of line segments: splits segments at every
//! intersection, snaps near-identical vertices, and traces the bounded faces
//! (with holes). Dangling edges are pruned from the face structure but kept
//! as obstacles of the face they lie in.

use rustc_hash::FxHashMap as HashMap;

use super::polygon::{ring_contains, signed_area};
use super::{Point, Polygon};

#[derive(Debug, Clone)]
pub struct ArrFace {
    pub outer: Vec<Point>,
    pub holes: Vec<Vec<Point>>,
    pub area: f64,
    /// Pruned dangling segments lying inside this face.
    pub obstacles: Vec<(Point, Point)>,
    interior: Point,
}

impl ArrFace {
    pub fn polygon(&self) -> Polygon {
        Polygon::with_holes(self.outer.clone(), self.holes.clone())
    }

    /// A point strictly inside the face, away from its boundary.
    pub fn interior_point(&self) -> Point {
        self.interior
    }
}

const OUTSIDE: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct Arrangement {
    pub vertices: Vec<Point>,
    /// Neighbours of each vertex sorted counter-clockwise by angle.
    nbrs: Vec<Vec<usize>>,
    /// First half-edge id of each vertex; `(u, nbrs[u][i])` is `start[u] + i`.
    start: Vec<usize>,
    /// Face to the left of each half-edge.
    face_of: Vec<usize>,
    pub faces: Vec<ArrFace>,
}

struct Snapper {
    tol: f64,
    grid: HashMap<(i64, i64), Vec<usize>>,
    points: Vec<Point>,
}

impl Snapper {
    fn key(&self, p: Point) -> (i64, i64) {
        ((p.x / self.tol).floor() as i64, (p.y / self.tol).floor() as i64)
    }

    fn id(&mut self, p: Point) -> usize {
        let (kx, ky) = self.key(p);
        let tol2 = self.tol * self.tol;
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.grid.get(&(kx + dx, ky + dy)) {
                    for &i in ids {
                        if self.points[i].dist2(p) <= tol2 {
                            return i;
                        }
                    }
                }
            }
        }
        let i = self.points.len();
        self.points.push(p);
        self.grid.entry((kx, ky)).or_default().push(i);
        i
    }
}

fn split_points(segs: &[(Point, Point)], tol: f64) -> Vec<Vec<(f64, Point)>> {
    let mut cuts: Vec<Vec<(f64, Point)>> = segs.iter().map(|&(a, b)| vec![(0.0, a), (1.0, b)]).collect();
    let boxes: Vec<(Point, Point)> = segs
        .iter()
        .map(|&(a, b)| {
            (
                Point::new(a.x.min(b.x) - tol, a.y.min(b.y) - tol),
                Point::new(a.x.max(b.x) + tol, a.y.max(b.y) + tol),
            )
        })
        .collect();
    for i in 0..segs.len() {
        let (a, b) = segs[i];
        let r = b - a;
        let rr = r.dot(r);
        if rr == 0.0 {
            continue;
        }
        for j in i + 1..segs.len() {
            let (bi, bj) = (boxes[i], boxes[j]);
            if bi.1.x < bj.0.x || bj.1.x < bi.0.x || bi.1.y < bj.0.y || bj.1.y < bi.0.y {
                continue;
            }
            let (c, d) = segs[j];
            let s = d - c;
            let ss = s.dot(s);
            if ss == 0.0 {
                continue;
            }
            let denom = r.cross(s);
            let ac = c - a;
            if denom.abs() > 1e-12 * rr.sqrt() * ss.sqrt() {
                let t = ac.cross(s) / denom;
                let u = ac.cross(r) / denom;
                let et = tol / rr.sqrt();
                let eu = tol / ss.sqrt();
                if t >= -et && t <= 1.0 + et && u >= -eu && u <= 1.0 + eu {
                    let t = t.clamp(0.0, 1.0);
                    let u = u.clamp(0.0, 1.0);
                    let p = if t == 0.0 {
                        a
                    } else if t == 1.0 {
                        b
                    } else if u == 0.0 {
                        c
                    } else if u == 1.0 {
                        d
                    } else {
                        a + r * t
                    };
                    cuts[i].push((t, p));
                    cuts[j].push((u, p));
                }
            } else if ac.cross(r).abs() <= tol * rr.sqrt() {
                // collinear: project each endpoint onto the other segment
                for p in [c, d] {
                    let t = (p - a).dot(r) / rr;
                    if t > 0.0 && t < 1.0 {
                        cuts[i].push((t, p));
                    }
                }
                for p in [a, b] {
                    let u = (p - c).dot(s) / ss;
                    if u > 0.0 && u < 1.0 {
                        cuts[j].push((u, p));
                    }
                }
            }
        }
    }
    cuts
}

impl Arrangement {
    pub fn build(segments: &[(Point, Point)]) -> Self {
        let scale = segments
            .iter()
            .flat_map(|&(a, b)| [a.x.abs(), a.y.abs(), b.x.abs(), b.y.abs()])
            .fold(1.0f64, f64::max);
        let tol = 1e-9 * scale;
        let segs: Vec<(Point, Point)> = segments.iter().copied().filter(|(a, b)| a.dist2(*b) > tol * tol).collect();
        let cuts = split_points(&segs, tol);

        let mut snap = Snapper { tol, grid: HashMap::default(), points: Vec::new() };
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for mut c in cuts {
            c.sort_by(|x, y| x.0.total_cmp(&y.0));
            let ids: Vec<usize> = c.iter().map(|&(_, p)| snap.id(p)).collect();
            for w in ids.windows(2) {
                if w[0] != w[1] {
                    edges.push((w[0].min(w[1]), w[0].max(w[1])));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let vertices = snap.points;
        let n = vertices.len();

        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        // prune dangling trees
        let mut dangling: Vec<(usize, usize)> = Vec::new();
        let mut stack: Vec<usize> = (0..n).filter(|&v| adj[v].len() == 1).collect();
        while let Some(v) = stack.pop() {
            if adj[v].len() != 1 {
                continue;
            }
            let w = adj[v][0];
            adj[v].clear();
            adj[w].retain(|&x| x != v);
            dangling.push((v, w));
            if adj[w].len() == 1 {
                stack.push(w);
            }
        }
        for (v, list) in adj.iter_mut().enumerate() {
            let p = vertices[v];
            list.sort_by(|&a, &b| {
                let da = vertices[a] - p;
                let db = vertices[b] - p;
                da.y.atan2(da.x).total_cmp(&db.y.atan2(db.x))
            });
        }

        // trace half-edge cycles
        let mut start = Vec::with_capacity(n + 1);
        start.push(0);
        for list in &adj {
            start.push(start.last().unwrap() + list.len());
        }
        let mut cycle_of = vec![usize::MAX; start[n]];
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for u in 0..n {
            for i in 0..adj[u].len() {
                if cycle_of[start[u] + i] != usize::MAX {
                    continue;
                }
                let id = cycles.len();
                let mut cyc = Vec::new();
                let (mut a, mut ia) = (u, i);
                loop {
                    cycle_of[start[a] + ia] = id;
                    cyc.push(a);
                    let b = adj[a][ia];
                    let list = &adj[b];
                    let idx = list.iter().position(|&x| x == a).expect("twin exists");
                    a = b;
                    ia = (idx + list.len() - 1) % list.len();
                    if (a, ia) == (u, i) {
                        break;
                    }
                }
                cycles.push(cyc);
            }
        }

        let rings: Vec<Vec<Point>> = cycles.iter().map(|c| c.iter().map(|&i| vertices[i]).collect()).collect();
        let areas: Vec<f64> = rings.iter().map(|r| signed_area(r)).collect();
        let mut face_index = vec![OUTSIDE; cycles.len()];
        let mut faces: Vec<ArrFace> = Vec::new();
        for (ci, r) in rings.iter().enumerate() {
            if areas[ci] > 0.0 {
                face_index[ci] = faces.len();
                faces.push(ArrFace {
                    outer: r.clone(),
                    holes: Vec::new(),
                    area: areas[ci],
                    obstacles: Vec::new(),
                    interior: Point::default(),
                });
            }
        }
        let smallest_container = |p: Point, faces: &[ArrFace]| {
            faces
                .iter()
                .enumerate()
                .filter(|(_, f)| ring_contains(&f.outer, p))
                .min_by(|a, b| a.1.area.total_cmp(&b.1.area))
                .map(|(i, _)| i)
        };
        for (ci, r) in rings.iter().enumerate() {
            if areas[ci] <= 0.0 {
                // a hole ring lies strictly inside its container, so probe
                // slightly off its lowest-leftmost vertex
                let probe = r.iter().copied().min_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))).unwrap();
                let probe = Point::new(probe.x - 4.0 * tol, probe.y);
                if let Some(f) = smallest_container(probe, &faces) {
                    face_index[ci] = f;
                    if areas[ci] < 0.0 {
                        faces[f].area += areas[ci];
                        faces[f].holes.push(r.clone());
                    }
                }
            }
        }
        for (v, w) in dangling {
            let (a, b) = (vertices[v], vertices[w]);
            if let Some(f) = smallest_container(a.midpoint(b), &faces) {
                faces[f].obstacles.push((a, b));
            }
        }
        for f in &mut faces {
            f.interior = interior_of(f);
        }
        let face_of = cycle_of.into_iter().map(|c| face_index[c]).collect();
        Arrangement { vertices, nbrs: adj, start, face_of, faces }
    }

    /// Boundary rings of the union of the selected faces. Counter-clockwise
    /// rings are outer boundaries, clockwise rings are holes.
    pub fn region_boundary(&self, selected: &[bool]) -> Vec<Vec<Point>> {
        let is_sel = |f: usize| f != OUTSIDE && selected[f];
        let half = |u: usize, v: usize| self.start[u] + self.nbrs[u].iter().position(|&x| x == v).expect("half-edge exists");
        let boundary = |u: usize, v: usize| is_sel(self.face_of[half(u, v)]) && !is_sel(self.face_of[half(v, u)]);
        let mut used = vec![false; self.face_of.len()];
        let mut rings = Vec::new();
        for u in 0..self.vertices.len() {
            for &v in &self.nbrs[u] {
                if used[half(u, v)] || !boundary(u, v) {
                    continue;
                }
                let mut ring = Vec::new();
                let (mut a, mut b) = (u, v);
                loop {
                    used[half(a, b)] = true;
                    ring.push(self.vertices[a]);
                    let list = &self.nbrs[b];
                    let idx = list.iter().position(|&x| x == a).unwrap();
                    let deg = list.len();
                    let mut next = None;
                    for k in 1..=deg {
                        let w = list[(idx + deg * 2 - k) % deg];
                        if boundary(b, w) {
                            next = Some(w);
                            break;
                        }
                    }
                    let c = next.expect("boundary continues");
                    a = b;
                    b = c;
                    if (a, b) == (u, v) || used[half(a, b)] {
                        break;
                    }
                }
                rings.push(ring);
            }
        }
        rings
    }
}

fn interior_of(f: &ArrFace) -> Point {
    let n = f.outer.len();
    let (mut best, mut len) = (0, -1.0);
    for i in 0..n {
        let l = f.outer[i].dist2(f.outer[(i + 1) % n]);
        if l > len {
            len = l;
            best = i;
        }
    }
    let a = f.outer[best];
    let b = f.outer[(best + 1) % n];
    let m = a.midpoint(b);
    let d = b - a;
    let normal = Point::new(-d.y, d.x) * (1.0 / d.norm());
    let mut hit = f64::INFINITY;
    let rings = std::iter::once(&f.outer).chain(f.holes.iter());
    for ring in rings {
        let k = ring.len();
        for i in 0..k {
            let (c, e) = (ring[i], ring[(i + 1) % k]);
            let s = e - c;
            let denom = normal.cross(s);
            if denom.abs() < 1e-300 {
                continue;
            }
            let t = (c - m).cross(s) / denom;
            let u = (c - m).cross(normal) / denom;
            if t > 1e-12 * (1.0 + m.norm()) && (0.0..=1.0).contains(&u) {
                hit = hit.min(t);
            }
        }
    }
    for &(c, e) in &f.obstacles {
        let s = e - c;
        let denom = normal.cross(s);
        if denom.abs() < 1e-300 {
            continue;
        }
        let t = (c - m).cross(s) / denom;
        let u = (c - m).cross(normal) / denom;
        if t > 0.0 && (0.0..=1.0).contains(&u) {
            hit = hit.min(t);
        }
    }
    let step = if hit.is_finite() { hit / 2.0 } else { 1e-6 };
    m + normal * step
}

/// Area of A ∩ B and of A ∪ B from a shared arrangement.
pub fn overlay_areas(a: &Polygon, b: &Polygon) -> (f64, f64) {
    let segs: Vec<(Point, Point)> = a.edges().chain(b.edges()).collect();
    let arr = Arrangement::build(&segs);
    let (mut inter, mut union) = (0.0, 0.0);
    for f in &arr.faces {
        let p = f.interior_point();
        let (ia, ib) = (a.contains(p), b.contains(p));
        if ia && ib {
            inter += f.area;
        }
        if ia || ib {
            union += f.area;
        }
    }
    (inter, union)
}

/// Union of the faces lying inside every given polygon; `None` unless the
/// result is a single ring without holes.
pub fn intersect_simple(polys: &[&Polygon]) -> Option<Vec<Point>> {
    let segs: Vec<(Point, Point)> = polys.iter().flat_map(|p| p.edges()).collect();
    let arr = Arrangement::build(&segs);
    let selected: Vec<bool> = arr
        .faces
        .iter()
        .map(|f| {
            let p = f.interior_point();
            polys.iter().all(|poly| poly.contains(p))
        })
        .collect();
    let rings = arr.region_boundary(&selected);
    if rings.len() != 1 || signed_area(&rings[0]) <= 0.0 {
        return None;
    }
    rings.into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn rect_segs(lo: Point, hi: Point) -> Vec<(Point, Point)> {
        let r = Polygon::rect(lo, hi);
        r.edges().collect()
    }

    #[test]
    fn single_square_has_one_face() {
        let arr = Arrangement::build(&rect_segs(p(0., 0.), p(2., 2.)));
        assert_eq!(arr.faces.len(), 1);
        assert_eq!(arr.faces[0].area, 4.0);
    }

    #[test]
    fn diagonal_splits_in_two() {
        let mut s = rect_segs(p(0., 0.), p(4., 2.));
        s.push((p(0., 0.), p(4., 2.)));
        let arr = Arrangement::build(&s);
        assert_eq!(arr.faces.len(), 2);
        for f in &arr.faces {
            assert_eq!(f.outer.len(), 3);
            assert!((f.area - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dangling_edge_is_obstacle() {
        let mut s = rect_segs(p(0., 0.), p(4., 4.));
        s.push((p(0., 2.), p(2., 2.)));
        let arr = Arrangement::build(&s);
        assert_eq!(arr.faces.len(), 1);
        assert_eq!(arr.faces[0].obstacles.len(), 1);
        assert_eq!(arr.faces[0].area, 16.0);
    }

    #[test]
    fn nested_square_is_hole() {
        let mut s = rect_segs(p(0., 0.), p(4., 4.));
        s.extend(rect_segs(p(1., 1.), p(2., 2.)));
        let arr = Arrangement::build(&s);
        assert_eq!(arr.faces.len(), 2);
        let outer = arr.faces.iter().find(|f| f.holes.len() == 1).unwrap();
        assert_eq!(outer.area, 15.0);
        assert!(outer.polygon().contains(outer.interior_point()));
    }

    #[test]
    fn adjacent_squares_merge_into_one_ring() {
        let mut s = rect_segs(p(0., 0.), p(1., 1.));
        s.extend(rect_segs(p(1., 0.), p(2., 1.)));
        let arr = Arrangement::build(&s);
        assert_eq!(arr.faces.len(), 2);
        let rings = arr.region_boundary(&[true, true]);
        assert_eq!(rings.len(), 1);
        assert!((signed_area(&rings[0]) - 2.0).abs() < 1e-12);
        let one = arr.region_boundary(&[true, false]);
        assert_eq!(one.len(), 1);
        assert!((signed_area(&one[0]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn overlapping_squares_overlay() {
        let a = Polygon::rect(p(0., 0.), p(1., 1.));
        let b = Polygon::rect(p(0.5, 0.), p(1.5, 1.));
        let (i, u) = overlay_areas(&a, &b);
        assert!((i - 0.5).abs() < 1e-12);
        assert!((u - 1.5).abs() < 1e-12);
    }

    #[test]
    fn intersection_of_crossing_rectangles() {
        let a = Polygon::rect(p(0., 1.), p(3., 2.));
        let b = Polygon::rect(p(1., 0.), p(2., 3.));
        let ring = intersect_simple(&[&a, &b]).unwrap();
        assert!((signed_area(&ring) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disconnected_intersection_is_rejected() {
        let a = Polygon::new(vec![p(0., 0.), p(4., 0.), p(4., 3.), p(3., 3.), p(3., 1.), p(1., 1.), p(1., 3.), p(0., 3.)]);
        let b = Polygon::rect(p(-1., 2.), p(5., 4.));
        assert!(intersect_simple(&[&a, &b]).is_none());
    }
}
