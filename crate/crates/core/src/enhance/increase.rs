use std::collections::{BTreeMap, BTreeSet};

use crate::graph::NodeId;
use crate::layout::{order_from, place, Layout, Pin, Rank};

use super::pipeline::Pipeline;
use super::relevance::relevant_with;
use super::{ChangeElement, EnhancementKind, EnhancementOutcome, Reason};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Right,
    Left,
}

impl Pipeline {
    /// Barycenter sweeps from the moved ordering with the chain held at its
    /// end of each layer, then coordinates.
    fn relayout(&self, cur: &Layout, mm: &BTreeMap<NodeId, Rank>, chain: &BTreeSet<NodeId>, side: Side) -> Layout {
        let ig = cur.graph.indexed();
        let layer: Vec<usize> = ig.ids.iter().map(|id| mm[id].layer).collect();
        let depth = layer.iter().max().map_or(0, |m| m + 1);
        let mut start = vec![Vec::new(); depth];
        for (v, &l) in layer.iter().enumerate() {
            start[l].push(v);
        }
        for row in &mut start {
            row.sort_by_key(|&v| mm[&ig.ids[v]].order);
        }
        let pinned: Vec<bool> = ig.ids.iter().map(|id| chain.contains(id)).collect();
        let pin = Pin { nodes: &pinned, right: side == Side::Right };
        let ordering = order_from(&ig, &layer, start, self.layout_cfg.barycenter_sweeps, Some(pin));
        let mut out = BTreeMap::new();
        for (l, row) in ordering.iter().enumerate() {
            for (o, &v) in row.iter().enumerate() {
                out.insert(ig.ids[v].clone(), Rank { layer: l, order: o });
            }
        }
        place(cur.graph.clone(), out, &self.layout_cfg)
    }

    fn leaf_on_hull(&self, layout: &Layout, leaf: &NodeId) -> bool {
        let el = ChangeElement::Node { id: leaf.clone() };
        relevant_with(layout, &el, &self.hull(layout), |n, s| self.hull_of(n, s))
    }

    fn leaves_off_hull(&self, layout: &Layout, handled: &BTreeSet<NodeId>) -> Vec<NodeId> {
        let hull = self.hull(layout);
        let with_succ: BTreeSet<&NodeId> = layout.graph.edges().iter().map(|e| &e.source).collect();
        layout
            .graph
            .nodes()
            .iter()
            .filter(|n| !with_succ.contains(n) && !handled.contains(*n))
            .filter(|n| layout.rank(n).is_some_and(|r| r.layer >= 1))
            .filter(|n| {
                let el = ChangeElement::Node { id: (*n).clone() };
                !relevant_with(layout, &el, &hull, |n, s| self.hull_of(n, s))
            })
            .cloned()
            .collect()
    }

    /// Makes more leaves hull-relevant by moving the chain above each leaf to
    /// the right or left end of its layers and laying the drawing out again.
    /// A move is kept when the guard accepts it and the leaf ends up on the
    /// hull.
    pub fn increase_outer_relevant(&self, layout: &Layout) -> EnhancementOutcome {
        let kind = EnhancementKind::Increase;
        let mut cur = layout.clone();
        let mut handled = BTreeSet::new();
        let mut accepted = 0;
        let mut rejected = false;
        let mut pending = self.leaves_off_hull(&cur, &handled).into_iter();
        while let Some(leaf) = pending.next() {
            handled.insert(leaf.clone());
            let chain = collect_chain(&cur, &leaf);
            let moved = [Side::Right, Side::Left].into_iter().find_map(|side| {
                let (mm, moved) = move_chain(&cur.mental_map, &chain, side)?;
                let cand = self.relayout(&cur, &mm, &moved, side);
                (self.accepts(&cand) && self.leaf_on_hull(&cand, &leaf)).then_some(cand)
            });
            match moved {
                Some(l) => {
                    cur = l;
                    accepted += 1;
                    pending = self.leaves_off_hull(&cur, &handled).into_iter();
                }
                None => rejected = true,
            }
        }
        let reason = if rejected { Reason::AestheticsReset } else { Reason::ThresholdMet };
        EnhancementOutcome { layout: cur, kind, applied: accepted > 0, iterations_used: accepted, reason }
    }
}

/// The leaf, its first parents up to the second layer, and every first-layer
/// parent of the node reached there.
fn collect_chain(layout: &Layout, leaf: &NodeId) -> BTreeSet<NodeId> {
    let mut preds: BTreeMap<&NodeId, Vec<&NodeId>> = BTreeMap::new();
    for e in layout.graph.edges() {
        preds.entry(&e.target).or_default().push(&e.source);
    }
    let rank = |n: &NodeId| layout.mental_map[n];
    let mut chain = BTreeSet::from([leaf.clone()]);
    let mut cur = leaf;
    while rank(cur).layer > 2 {
        let first = preds.get(cur).and_then(|ps| {
            ps.iter().copied().max_by(|a, b| {
                let (ra, rb) = (rank(a), rank(b));
                ra.layer.cmp(&rb.layer).then(rb.order.cmp(&ra.order))
            })
        });
        match first {
            Some(p) if rank(p).layer >= 1 => {
                chain.insert(p.clone());
                cur = p;
            }
            _ => return chain,
        }
    }
    if rank(cur).layer == 2 {
        for p in preds.get(cur).into_iter().flatten() {
            if rank(p).layer == 1 {
                chain.insert((*p).clone());
            }
        }
    }
    chain
}

/// Mental map with the chain moved to one end of each of its layers, and the
/// nodes actually moved. `None` when nothing would change.
fn move_chain(
    mm: &BTreeMap<NodeId, Rank>,
    chain: &BTreeSet<NodeId>,
    side: Side,
) -> Option<(BTreeMap<NodeId, Rank>, BTreeSet<NodeId>)> {
    let depth = mm.values().map(|r| r.layer + 1).max().unwrap_or(0);
    let mut rows: Vec<Vec<&NodeId>> = vec![Vec::new(); depth];
    for (n, r) in mm {
        rows[r.layer].push(n);
    }
    for row in &mut rows {
        row.sort_by_key(|n| mm[*n].order);
    }
    let mut chain: BTreeSet<&NodeId> = chain.iter().collect();
    if depth > 1 && !rows[1].is_empty() && rows[1].iter().all(|n| chain.contains(*n)) {
        let drop = match side {
            Side::Right => rows[1].first(),
            Side::Left => rows[1].last(),
        };
        chain.remove(*drop?);
    }
    if chain.is_empty() {
        return None;
    }
    let mut out = BTreeMap::new();
    for (layer, row) in rows.iter().enumerate() {
        let (mut inside, outside): (Vec<&NodeId>, Vec<&NodeId>) = row.iter().partition(|n| chain.contains(*n));
        let ordered = match side {
            Side::Right => {
                let mut v = outside;
                v.append(&mut inside);
                v
            }
            Side::Left => {
                inside.extend(outside);
                inside
            }
        };
        for (order, n) in ordered.into_iter().enumerate() {
            out.insert(n.clone(), Rank { layer, order });
        }
    }
    let moved = chain.into_iter().cloned().collect();
    (&out != mm).then_some((out, moved))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::HullConfig;
    use crate::graph::DirectedGraph;
    use crate::layout::{layout_graph, LayoutConfig};
    use crate::enhance::EnhanceConfig;

    fn mm(rows: &[&[&str]]) -> BTreeMap<NodeId, Rank> {
        let mut m = BTreeMap::new();
        for (layer, row) in rows.iter().enumerate() {
            for (order, n) in row.iter().enumerate() {
                m.insert(NodeId::from(*n), Rank { layer, order });
            }
        }
        m
    }

    fn row(m: &BTreeMap<NodeId, Rank>, layer: usize) -> Vec<String> {
        let mut v: Vec<_> = m.iter().filter(|(_, r)| r.layer == layer).collect();
        v.sort_by_key(|(_, r)| r.order);
        v.into_iter().map(|(n, _)| n.as_str().to_owned()).collect()
    }

    #[test]
    fn chain_follows_first_parent_then_all_first_layer_parents() {
        let g = DirectedGraph::from_pairs(
            &["r", "a", "b", "c", "d", "e", "f"],
            &[("r", "a"), ("r", "b"), ("r", "c"), ("a", "d"), ("b", "d"), ("c", "e"), ("d", "f"), ("e", "f")],
        );
        let l = layout_graph(&g, &LayoutConfig::default()).unwrap();
        let chain = collect_chain(&l, &NodeId::from("f"));
        let first = if l.mental_map[&NodeId::from("d")].order < l.mental_map[&NodeId::from("e")].order { "d" } else { "e" };
        assert!(chain.contains(&NodeId::from("f")));
        assert!(chain.contains(&NodeId::from(first)));
        assert_eq!(chain.len(), if first == "d" { 4 } else { 3 });
    }

    #[test]
    fn move_right_drops_leftmost_when_whole_first_layer_is_taken() {
        let m = mm(&[&["r"], &["a", "b"], &["x", "y"]]);
        let chain: BTreeSet<NodeId> = ["a", "b", "x"].into_iter().map(NodeId::from).collect();
        let (right, moved) = move_chain(&m, &chain, Side::Right).unwrap();
        assert!(!moved.contains(&NodeId::from("a")));
        assert_eq!(row(&right, 1), ["a", "b"]);
        assert_eq!(row(&right, 2), ["y", "x"]);
        // left keeps a and x, already leftmost
        assert!(move_chain(&m, &chain, Side::Left).is_none());
    }

    #[test]
    fn unchanged_move_is_skipped() {
        let m = mm(&[&["r"], &["a", "b"], &["x", "y"]]);
        let chain: BTreeSet<NodeId> = ["b", "y"].into_iter().map(NodeId::from).collect();
        assert!(move_chain(&m, &chain, Side::Right).is_none());
        assert!(move_chain(&m, &chain, Side::Left).is_some());
    }

    #[test]
    fn all_leaves_on_hull_is_a_no_op() {
        let g = DirectedGraph::from_pairs(&["r", "a", "b"], &[("r", "a"), ("r", "b")]);
        let p = Pipeline::new(&g, &g, &LayoutConfig::default(), &HullConfig::default(), &EnhanceConfig::default()).unwrap();
        let o = p.increase_outer_relevant(&p.initial);
        assert!(!o.applied);
        assert_eq!(o.reason, Reason::ThresholdMet);
        assert_eq!(o.layout.positions, p.initial.positions);
    }
}
