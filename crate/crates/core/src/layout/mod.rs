//! Base hierarchical layout: longest-path layering, barycenter ordering and
//! fixed-spacing coordinates, plus restriction of a supergraph layout.

mod layering;
mod ordering;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::aesthetics::AestheticWeights;
use crate::error::{Error, Result};
use crate::geometry::{self, Point};
use crate::graph::{DirectedGraph, Edge, NodeId, Supergraph};

pub use layering::assign_layers_longest_path;
pub use ordering::order_layers_barycenter;

pub(crate) use ordering::{order_from, order_indexed, Pin};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LayoutConfig {
    pub horizontal_spacing: f64,
    pub vertical_spacing: f64,
    pub barycenter_sweeps: usize,
    pub weights: AestheticWeights,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        Self {
            horizontal_spacing: 80.0,
            vertical_spacing: 200.0,
            barycenter_sweeps: 8,
            weights: AestheticWeights::default(),
        }
    }
}

impl LayoutConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.horizontal_spacing > 0.0 && self.horizontal_spacing.is_finite()) {
            return Err(Error::Config("horizontal_spacing must be positive".into()));
        }
        if !(self.vertical_spacing > 0.0 && self.vertical_spacing.is_finite()) {
            return Err(Error::Config("vertical_spacing must be positive".into()));
        }
        self.weights.validate()
    }
}

/// Saved relative position of a node: its layer and its index within it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Rank {
    pub layer: usize,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub graph: DirectedGraph,
    pub positions: BTreeMap<NodeId, Point>,
    pub mental_map: BTreeMap<NodeId, Rank>,
}

impl Layout {
    pub fn position(&self, n: &NodeId) -> Option<Point> {
        self.positions.get(n).copied()
    }

    pub fn rank(&self, n: &NodeId) -> Option<Rank> {
        self.mental_map.get(n).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn points(&self) -> Vec<Point> {
        self.positions.values().copied().collect()
    }

    pub fn segment(&self, e: &Edge) -> Option<(Point, Point)> {
        Some((self.position(&e.source)?, self.position(&e.target)?))
    }

    pub fn segments(&self) -> Vec<(Point, Point)> {
        self.graph.edges().iter().filter_map(|e| self.segment(e)).collect()
    }

    pub fn bbox(&self) -> Option<(Point, Point)> {
        geometry::bbox(self.positions.values().copied())
    }

    /// Nodes of every layer in mental-map order.
    pub fn layers(&self) -> Vec<Vec<NodeId>> {
        let depth = self.mental_map.values().map(|r| r.layer + 1).max().unwrap_or(0);
        let mut out: Vec<Vec<(usize, NodeId)>> = vec![Vec::new(); depth];
        for (n, r) in &self.mental_map {
            out[r.layer].push((r.order, n.clone()));
        }
        out.into_iter()
            .map(|mut l| {
                l.sort();
                l.into_iter().map(|(_, n)| n).collect()
            })
            .collect()
    }

    pub fn layer_of(&self, layer: usize) -> Vec<NodeId> {
        let mut l: Vec<(usize, NodeId)> = self
            .mental_map
            .iter()
            .filter(|(_, r)| r.layer == layer)
            .map(|(n, r)| (r.order, n.clone()))
            .collect();
        l.sort();
        l.into_iter().map(|(_, n)| n).collect()
    }

    /// True iff within every layer x strictly increases with the saved order.
    pub fn respects_mental_map(&self) -> bool {
        self.layers().iter().all(|l| {
            l.windows(2).all(|w| match (self.position(&w[0]), self.position(&w[1])) {
                (Some(a), Some(b)) => a.x < b.x,
                _ => false,
            })
        })
    }

    /// Keeps `target`'s nodes at their current coordinates and its edges.
    /// Order indices are compacted per layer; relative order is unchanged.
    pub fn restrict(&self, target: &DirectedGraph) -> Result<Layout> {
        let mut positions = BTreeMap::new();
        for n in target.nodes() {
            let p = self.position(n).ok_or_else(|| Error::MissingNode(n.clone()))?;
            positions.insert(n.clone(), p);
        }
        let mut mental_map = BTreeMap::new();
        for (layer, nodes) in self.layers().into_iter().enumerate() {
            for (order, n) in nodes.into_iter().filter(|n| target.contains_node(n)).enumerate() {
                mental_map.insert(n, Rank { layer, order });
            }
        }
        for n in target.nodes() {
            if !mental_map.contains_key(n) {
                return Err(Error::MissingNode(n.clone()));
            }
        }
        Ok(Layout { graph: target.clone(), positions, mental_map })
    }

    pub fn to_document(&self) -> LayoutDocument {
        LayoutDocument {
            nodes: self
                .positions
                .iter()
                .map(|(id, p)| {
                    let r = self.mental_map[id];
                    PlacedNode { id: id.clone(), x: p.x, y: p.y, layer: r.layer, order: r.order }
                })
                .collect(),
            edges: self.graph.edges().iter().cloned().collect(),
        }
    }
}

pub fn restrict(super_layout: &Layout, target: &DirectedGraph) -> Result<Layout> {
    super_layout.restrict(target)
}

/// Serialized layout: node coordinates with their ranks, and the edge list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutDocument {
    pub nodes: Vec<PlacedNode>,
    #[serde(default)]
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacedNode {
    pub id: NodeId,
    pub x: f64,
    pub y: f64,
    pub layer: usize,
    pub order: usize,
}

impl TryFrom<LayoutDocument> for Layout {
    type Error = Error;

    fn try_from(doc: LayoutDocument) -> Result<Layout> {
        let graph = DirectedGraph::validated(doc.nodes.iter().map(|n| n.id.clone()), doc.edges)?;
        let positions = doc.nodes.iter().map(|n| (n.id.clone(), Point::new(n.x, n.y))).collect();
        let mental_map = doc
            .nodes
            .into_iter()
            .map(|n| (n.id, Rank { layer: n.layer, order: n.order }))
            .collect();
        Ok(Layout { graph, positions, mental_map })
    }
}

/// y = layer · p_VS; x = order · p_HS with every layer centred on the widest
/// layer's midline.
pub fn assign_coordinates(
    g: &DirectedGraph,
    layering: &BTreeMap<NodeId, usize>,
    ordering: &[Vec<NodeId>],
    cfg: &LayoutConfig,
) -> Result<Layout> {
    let mut mental_map = BTreeMap::new();
    for (layer, nodes) in ordering.iter().enumerate() {
        for (order, n) in nodes.iter().enumerate() {
            if layering.get(n) != Some(&layer) {
                return Err(Error::InfeasibleParameters(format!(
                    "ordering places {n} on layer {layer}, layering disagrees"
                )));
            }
            mental_map.insert(n.clone(), Rank { layer, order });
        }
    }
    for n in g.nodes() {
        if !mental_map.contains_key(n) {
            return Err(Error::MissingNode(n.clone()));
        }
    }
    Ok(place(g.clone(), mental_map, cfg))
}

/// Coordinates for a complete mental map.
pub(crate) fn place(graph: DirectedGraph, mental_map: BTreeMap<NodeId, Rank>, cfg: &LayoutConfig) -> Layout {
    let depth = mental_map.values().map(|r| r.layer + 1).max().unwrap_or(0);
    let mut width = vec![0usize; depth];
    for r in mental_map.values() {
        width[r.layer] += 1;
    }
    let widest = width.iter().copied().max().unwrap_or(0) as f64;
    let positions = mental_map
        .iter()
        .map(|(n, r)| {
            let k = width[r.layer] as f64;
            let x = r.order as f64 * cfg.horizontal_spacing
                + ((widest - 1.0) - (k - 1.0)) * cfg.horizontal_spacing / 2.0;
            (n.clone(), Point::new(x, r.layer as f64 * cfg.vertical_spacing))
        })
        .collect();
    Layout { graph, positions, mental_map }
}

/// Layering, ordering and coordinates for a single graph.
pub fn layout_graph(g: &DirectedGraph, cfg: &LayoutConfig) -> Result<Layout> {
    g.ensure_valid()?;
    cfg.validate()?;
    let ig = g.indexed();
    let layer = layering::layers_indexed(&ig).expect("validated graph is acyclic");
    let ordering = order_indexed(&ig, &layer, cfg.barycenter_sweeps);
    let mut mental_map = BTreeMap::new();
    for (l, row) in ordering.iter().enumerate() {
        for (o, &v) in row.iter().enumerate() {
            mental_map.insert(ig.ids[v].clone(), Rank { layer: l, order: o });
        }
    }
    Ok(place(g.clone(), mental_map, cfg))
}

/// Lays out the union graph once; both restricted drawings read from it.
pub fn layout_supergraph(s: &Supergraph, cfg: &LayoutConfig) -> Result<Layout> {
    layout_graph(&s.graph, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_supergraph;

    fn pos(l: &Layout, n: &str) -> Point {
        l.position(&n.into()).unwrap()
    }

    #[test]
    fn single_node_at_origin() {
        let g = DirectedGraph::from_pairs(&["A"], &[]);
        let l = layout_graph(&g, &LayoutConfig::default()).unwrap();
        assert_eq!(pos(&l, "A"), Point::new(0.0, 0.0));
    }

    #[test]
    fn single_layer_spacing() {
        let g = DirectedGraph::from_pairs(&["A", "B", "C"], &[]);
        let l = layout_graph(&g, &LayoutConfig::default()).unwrap();
        let xs: Vec<f64> = ["A", "B", "C"].iter().map(|n| pos(&l, n).x).collect();
        assert_eq!(xs, vec![0.0, 80.0, 160.0]);
    }

    #[test]
    fn two_layers_vertical_spacing() {
        let g = DirectedGraph::from_pairs(&[], &[("A", "B")]);
        let l = layout_graph(&g, &LayoutConfig::default()).unwrap();
        assert_eq!(pos(&l, "A").y, 0.0);
        assert_eq!(pos(&l, "B").y, 200.0);
    }

    #[test]
    fn short_layer_is_centred() {
        let g = DirectedGraph::from_pairs(&[], &[("R", "A"), ("R", "B"), ("R", "C")]);
        let l = layout_graph(&g, &LayoutConfig::default()).unwrap();
        assert_eq!(pos(&l, "R"), Point::new(80.0, 0.0));
    }

    #[test]
    fn chain_is_a_column() {
        let g = DirectedGraph::from_pairs(&[], &[("A", "B"), ("B", "C"), ("C", "D")]);
        let l = layout_graph(&g, &LayoutConfig::default()).unwrap();
        assert!(l.positions.values().all(|p| p.x == 0.0));
        assert!(l.respects_mental_map());
    }

    #[test]
    fn restrict_to_self_is_identity() {
        let g = DirectedGraph::from_pairs(&[], &[("A", "B"), ("A", "C"), ("B", "D")]);
        let l = layout_graph(&g, &LayoutConfig::default()).unwrap();
        assert_eq!(l.restrict(&g).unwrap(), l);
    }

    #[test]
    fn restrict_drops_missing_node_only() {
        let base = DirectedGraph::from_pairs(&[], &[("A", "B"), ("A", "C")]);
        let alt = DirectedGraph::from_pairs(&[], &[("A", "B"), ("A", "C"), ("A", "D")]);
        let s = build_supergraph(&base, &alt).unwrap();
        let sl = layout_supergraph(&s, &LayoutConfig::default()).unwrap();
        let rb = sl.restrict(&base).unwrap();
        let ra = sl.restrict(&alt).unwrap();
        assert!(rb.position(&"D".into()).is_none());
        for n in base.nodes() {
            assert_eq!(rb.position(n), sl.position(n));
            assert_eq!(rb.position(n), ra.position(n));
        }
        assert_eq!(rb.rank(&"C".into()).unwrap().order, 1);
    }

    #[test]
    fn restrict_missing_node_errors() {
        let g = DirectedGraph::from_pairs(&[], &[("A", "B")]);
        let l = layout_graph(&g, &LayoutConfig::default()).unwrap();
        let other = DirectedGraph::from_pairs(&[], &[("A", "Z")]);
        assert!(matches!(l.restrict(&other), Err(Error::MissingNode(_))));
    }

    #[test]
    fn document_roundtrip() {
        let g = DirectedGraph::from_pairs(&[], &[("A", "B"), ("A", "C")]);
        let l = layout_graph(&g, &LayoutConfig::default()).unwrap();
        let text = serde_json::to_string(&l.to_document()).unwrap();
        let back: LayoutDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(Layout::try_from(back).unwrap(), l);
    }

    #[test]
    fn assign_coordinates_checks_consistency() {
        let g = DirectedGraph::from_pairs(&[], &[("A", "B")]);
        let layers = assign_layers_longest_path(&g).unwrap();
        let ord = order_layers_barycenter(&g, &layers, 8).unwrap();
        let l = assign_coordinates(&g, &layers, &ord, &LayoutConfig::default()).unwrap();
        assert_eq!(l, layout_graph(&g, &LayoutConfig::default()).unwrap());
        let bad = vec![vec![NodeId::from("B")], vec![NodeId::from("A")]];
        assert!(assign_coordinates(&g, &layers, &bad, &LayoutConfig::default()).is_err());
    }
}
