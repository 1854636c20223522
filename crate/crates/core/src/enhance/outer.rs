use crate::geometry::bbox;
use crate::graph::NodeId;
use crate::layout::Layout;

use super::pipeline::Pipeline;
use super::{Change, ChangeElement, EnhancementKind, EnhancementOutcome, Reason};

impl Pipeline {
    /// Index 0 or the last index of the node's layer in the saved ranks.
    pub fn is_layer_extreme(&self, layout: &Layout, node: &NodeId) -> bool {
        self.outward_side(layout, node).is_some()
    }

    /// -1 to move left, +1 to move right; `None` for a node inside its layer.
    fn outward_side(&self, layout: &Layout, node: &NodeId) -> Option<f64> {
        let r = layout.rank(node)?;
        let width = layout.mental_map.values().filter(|q| q.layer == r.layer).count();
        if width == 1 {
            let (lo, hi) = bbox(layout.positions.values().copied())?;
            let x = layout.position(node)?.x;
            return Some(if x < (lo.x + hi.x) / 2.0 { -1.0 } else { 1.0 });
        }
        if r.order == 0 {
            Some(-1.0)
        } else if r.order + 1 == width {
            Some(1.0)
        } else {
            None
        }
    }

    /// Moves an extreme node outward along its layer.
    pub fn enhance_outer_node(&self, layout: &Layout, change: &Change) -> EnhancementOutcome {
        self.outer_node(layout, change, self.is_relevant(layout, change))
    }

    fn outer_node(&self, layout: &Layout, change: &Change, relevant: bool) -> EnhancementOutcome {
        let kind = EnhancementKind::OuterMove;
        let ChangeElement::Node { id } = &change.element else {
            return EnhancementOutcome::unchanged(layout, kind, Reason::NotApplicable);
        };
        let side = match self.outward_side(layout, id) {
            Some(s) if relevant => s,
            _ => return EnhancementOutcome::unchanged(layout, kind, Reason::NotApplicable),
        };
        let a = self.cfg.outer_adaption;
        self.iterate(layout, kind, |l| self.shape_distance(l), self.cfg.hausdorff_threshold, |l| {
            l.positions.get_mut(id).map(|p| p.x += side * a).is_some()
        })
    }

    /// Splits the drawing at the node: everything strictly left of it moves
    /// left, everything strictly right moves right.
    pub fn enhance_outer_node_split(&self, layout: &Layout, change: &Change) -> EnhancementOutcome {
        self.outer_split(layout, change, self.is_relevant(layout, change))
    }

    fn outer_split(&self, layout: &Layout, change: &Change, relevant: bool) -> EnhancementOutcome {
        let kind = EnhancementKind::OuterSplit;
        let ChangeElement::Node { id } = &change.element else {
            return EnhancementOutcome::unchanged(layout, kind, Reason::NotApplicable);
        };
        if self.outward_side(layout, id).is_some() || !relevant {
            return EnhancementOutcome::unchanged(layout, kind, Reason::NotApplicable);
        }
        let a = self.cfg.outer_adaption;
        self.iterate(layout, kind, |l| self.shape_distance(l), self.cfg.hausdorff_threshold, |l| {
            let Some(axis) = l.position(id).map(|p| p.x) else {
                return false;
            };
            split(l, axis, a);
            true
        })
    }

    /// Lengthens an edge by splitting a quarter node spacing from its origin
    /// towards its destination.
    pub fn enhance_outer_edge(&self, layout: &Layout, change: &Change) -> EnhancementOutcome {
        self.outer_edge(layout, change, self.is_relevant(layout, change))
    }

    fn outer_edge(&self, layout: &Layout, change: &Change, relevant: bool) -> EnhancementOutcome {
        let kind = EnhancementKind::OuterEdge;
        let ChangeElement::Edge { edge } = &change.element else {
            return EnhancementOutcome::unchanged(layout, kind, Reason::NotApplicable);
        };
        let Some((o, d)) = layout.segment(edge) else {
            return EnhancementOutcome::unchanged(layout, kind, Reason::NotApplicable);
        };
        if o.x == d.x || !relevant {
            return EnhancementOutcome::unchanged(layout, kind, Reason::NotApplicable);
        }
        let a = self.cfg.outer_adaption;
        let quarter = self.layout_cfg.horizontal_spacing / 4.0;
        self.iterate(layout, kind, |l| self.shape_distance(l), self.cfg.hausdorff_threshold, |l| {
            let Some((o, d)) = l.segment(edge) else {
                return false;
            };
            let dx = d.x - o.x;
            let axis = if dx.abs() < quarter { (o.x + d.x) / 2.0 } else { o.x + dx.signum() * quarter };
            split(l, axis, a);
            true
        })
    }
}

impl Pipeline {
    /// Outer enhancement for a change already known to be hull-relevant.
    pub(crate) fn enhance_outer(&self, layout: &Layout, change: &Change) -> EnhancementOutcome {
        match &change.element {
            ChangeElement::Node { id } if self.is_layer_extreme(layout, id) => self.outer_node(layout, change, true),
            ChangeElement::Node { .. } => self.outer_split(layout, change, true),
            ChangeElement::Edge { .. } => self.outer_edge(layout, change, true),
        }
    }
}

pub(crate) fn split(l: &mut Layout, axis: f64, a: f64) {
    for p in l.positions.values_mut() {
        if p.x < axis {
            p.x -= a;
        } else if p.x > axis {
            p.x += a;
        }
    }
}
