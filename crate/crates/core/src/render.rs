//! SVG drawings of layouts, with optional hull and white-space overlays.
//!
//! Only `line`, `circle`, `path`, `polyline` and `text` elements are emitted
//! under the root. Changed elements are drawn with a doubled stroke width.

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::geometry::{bbox, InscribedCircle, Point};
use crate::graph::{Edge, NodeId};
use crate::layout::Layout;

pub const NODE_RADIUS: f64 = 6.0;
const STROKE: f64 = 1.5;
const ARROW_LENGTH: f64 = 8.0;
const MARGIN: f64 = 30.0;

/// Geometry drawn on top of a layout. The point lists are also what the
/// `points` and circle attributes of the overlay elements hold.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Overlay {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hull: Option<Vec<Point>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub circles: Vec<InscribedCircle>,
}

/// Elements to draw with the heavier stroke.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Highlight {
    pub nodes: BTreeSet<NodeId>,
    pub edges: BTreeSet<Edge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ViewBox {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

impl ViewBox {
    /// Smallest box holding every layout and overlay, plus a margin.
    pub fn covering<'a>(scenes: impl IntoIterator<Item = (&'a Layout, &'a Overlay)>) -> ViewBox {
        let mut pts = Vec::new();
        for (layout, overlay) in scenes {
            pts.extend(layout.positions.values().copied());
            pts.extend(overlay.hull.iter().flatten().copied());
            for c in &overlay.circles {
                pts.push(Point::new(c.center.x - c.radius, c.center.y - c.radius));
                pts.push(Point::new(c.center.x + c.radius, c.center.y + c.radius));
            }
        }
        let (lo, hi) = bbox(pts).unwrap_or_default();
        let pad = MARGIN + NODE_RADIUS;
        ViewBox { x: lo.x - pad, y: lo.y - pad, width: hi.x - lo.x + 2.0 * pad, height: hi.y - lo.y + 2.0 * pad }
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn num(v: f64) -> String {
    let r = (v * 100.0).round() / 100.0;
    if r == 0.0 { "0".into() } else { format!("{r}") }
}

pub fn render_svg(layout: &Layout, highlight: &Highlight, overlay: &Overlay, view: ViewBox) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        num(view.x),
        num(view.y),
        num(view.width),
        num(view.height),
        num(view.width),
        num(view.height)
    );
    if let Some(hull) = &overlay.hull {
        let pts: Vec<String> = hull.iter().chain(hull.first()).map(|p| format!("{},{}", num(p.x), num(p.y))).collect();
        let _ = writeln!(
            s,
            r##"  <polyline class="hull" points="{}" fill="none" stroke="#888" stroke-width="1" stroke-dasharray="6 4"/>"##,
            pts.join(" ")
        );
    }
    for c in &overlay.circles {
        let _ = writeln!(
            s,
            r##"  <circle class="whitespace" cx="{}" cy="{}" r="{}" fill="none" stroke="#888" stroke-width="1"/>"##,
            num(c.center.x),
            num(c.center.y),
            num(c.radius)
        );
    }
    for e in layout.graph.edges() {
        let Some((a, b)) = layout.segment(e) else { continue };
        let width = if highlight.edges.contains(e) { 2.0 * STROKE } else { STROKE };
        let len = a.dist(b);
        if len <= 2.0 * NODE_RADIUS {
            continue;
        }
        let u = (b - a) * (1.0 / len);
        let start = a + u * NODE_RADIUS;
        let tip = b - u * NODE_RADIUS;
        let base = tip - u * ARROW_LENGTH;
        let n = Point::new(-u.y, u.x) * (ARROW_LENGTH * 0.4);
        let _ = writeln!(
            s,
            r#"  <line class="edge" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="{}"/>"#,
            num(start.x),
            num(start.y),
            num(base.x),
            num(base.y),
            num(width)
        );
        let (l, r) = (base + n, base - n);
        let _ = writeln!(
            s,
            r#"  <path class="arrow" d="M{},{} L{},{} L{},{} Z" fill="black" stroke="black" stroke-width="{}"/>"#,
            num(tip.x),
            num(tip.y),
            num(l.x),
            num(l.y),
            num(r.x),
            num(r.y),
            num(width / 2.0)
        );
    }
    for (id, p) in &layout.positions {
        let changed = highlight.nodes.contains(id);
        let width = if changed { 2.0 * STROKE } else { STROKE };
        let _ = writeln!(
            s,
            r#"  <circle class="node" cx="{}" cy="{}" r="{}" fill="white" stroke="black" stroke-width="{}"/>"#,
            num(p.x),
            num(p.y),
            num(NODE_RADIUS),
            num(width)
        );
        let _ = writeln!(
            s,
            r#"  <text x="{}" y="{}" font-size="10" font-family="sans-serif">{}</text>"#,
            num(p.x + NODE_RADIUS + 2.0),
            num(p.y - NODE_RADIUS - 2.0),
            escape(id.as_str())
        );
    }
    s.push_str("</svg>\n");
    s
}
