use std::collections::BTreeMap;

use crate::aesthetics::count_crossings_indexed;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::graph::{DirectedGraph, IndexedGraph, NodeId};

/// Barycenter crossing reduction. Sweeps alternate down (fixing the layers
/// above) and up (fixing the layers below); the ordering with the fewest
/// crossings seen so far, starting with the initial one, is returned.
pub fn order_layers_barycenter(
    g: &DirectedGraph,
    layering: &BTreeMap<NodeId, usize>,
    sweeps: usize,
) -> Result<Vec<Vec<NodeId>>> {
    let ig = g.indexed();
    let layer = layer_vector(&ig, layering)?;
    let ordering = order_indexed(&ig, &layer, sweeps);
    Ok(ordering
        .into_iter()
        .map(|l| l.into_iter().map(|i| ig.ids[i].clone()).collect())
        .collect())
}

pub(crate) fn layer_vector(ig: &IndexedGraph, layering: &BTreeMap<NodeId, usize>) -> Result<Vec<usize>> {
    ig.ids
        .iter()
        .map(|id| layering.get(id).copied().ok_or_else(|| Error::MissingNode(id.clone())))
        .collect()
}

/// Nodes of each layer in identifier order.
pub(crate) fn initial_order(layer: &[usize]) -> Vec<Vec<usize>> {
    let depth = layer.iter().max().map_or(0, |m| m + 1);
    let mut out = vec![Vec::new(); depth];
    for (v, &l) in layer.iter().enumerate() {
        out[l].push(v);
    }
    out
}

/// Positions in spacing units: x = order + (W - k) / 2, y = layer.
/// Real coordinates are an affine image of these, so crossings agree.
pub(crate) fn unit_positions(n: usize, ordering: &[Vec<usize>]) -> Vec<Point> {
    let widest = ordering.iter().map(Vec::len).max().unwrap_or(0) as f64;
    let mut pts = vec![Point::default(); n];
    for (l, row) in ordering.iter().enumerate() {
        let shift = (widest - row.len() as f64) / 2.0;
        for (o, &v) in row.iter().enumerate() {
            pts[v] = Point::new(o as f64 + shift, l as f64);
        }
    }
    pts
}

pub(crate) fn crossings_of(ig: &IndexedGraph, ordering: &[Vec<usize>]) -> usize {
    count_crossings_indexed(&unit_positions(ig.len(), ordering), &ig.edges)
}

pub(crate) fn order_indexed(ig: &IndexedGraph, layer: &[usize], sweeps: usize) -> Vec<Vec<usize>> {
    order_from(ig, layer, initial_order(layer), sweeps, None)
}

/// Nodes kept at one end of their layers during reordering.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Pin<'a> {
    pub nodes: &'a [bool],
    pub right: bool,
}

/// Barycenter sweeps from a given ordering. Pinned nodes stay together at
/// their end of each layer.
pub(crate) fn order_from(
    ig: &IndexedGraph,
    layer: &[usize],
    start: Vec<Vec<usize>>,
    sweeps: usize,
    pin: Option<Pin<'_>>,
) -> Vec<Vec<usize>> {
    let mut current = start;
    let mut best = current.clone();
    let mut best_crossings = crossings_of(ig, &best);
    let mut unchanged = 0;
    for sweep in 0..sweeps {
        if best_crossings == 0 || unchanged >= 2 {
            break;
        }
        let before = current.clone();
        if sweep % 2 == 0 {
            for l in 1..current.len() {
                reorder(&mut current, l, &ig.pred, layer, pin);
            }
        } else {
            for l in (0..current.len().saturating_sub(1)).rev() {
                reorder(&mut current, l, &ig.succ, layer, pin);
            }
        }
        if current == before {
            unchanged += 1;
            continue;
        }
        unchanged = 0;
        let c = crossings_of(ig, &current);
        if c < best_crossings {
            best_crossings = c;
            best = current.clone();
        }
    }
    best
}

fn reorder(ordering: &mut [Vec<usize>], l: usize, fixed: &[Vec<usize>], layer: &[usize], pin: Option<Pin<'_>>) {
    let mut centred = vec![0.0; layer.len()];
    for row in ordering.iter() {
        let mid = (row.len() as f64 - 1.0) / 2.0;
        for (o, &v) in row.iter().enumerate() {
            centred[v] = o as f64 - mid;
        }
    }
    let mut keyed: Vec<(f64, usize)> = ordering[l]
        .iter()
        .map(|&v| {
            let ns = &fixed[v];
            let bc = if ns.is_empty() {
                centred[v]
            } else {
                ns.iter().map(|&u| centred[u]).sum::<f64>() / ns.len() as f64
            };
            (bc, v)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    let sorted = keyed.into_iter().map(|(_, v)| v);
    ordering[l] = match pin {
        None => sorted.collect(),
        Some(p) => {
            let (pinned, free): (Vec<usize>, Vec<usize>) = sorted.partition(|&v| p.nodes[v]);
            if p.right {
                free.into_iter().chain(pinned).collect()
            } else {
                pinned.into_iter().chain(free).collect()
            }
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::assign_layers_longest_path;

    fn order(g: &DirectedGraph) -> Vec<Vec<String>> {
        let layers = assign_layers_longest_path(g).unwrap();
        order_layers_barycenter(g, &layers, 8)
            .unwrap()
            .into_iter()
            .map(|l| l.into_iter().map(|n| n.to_string()).collect())
            .collect()
    }

    #[test]
    fn twisted_pair_is_untangled() {
        let g = DirectedGraph::from_pairs(&[], &[("u1", "v2"), ("u2", "v1")]);
        assert_eq!(order(&g), vec![vec!["u1", "u2"], vec!["v2", "v1"]]);
        let ig = g.indexed();
        let layer = crate::layout::layering::layers_indexed(&ig).unwrap();
        assert_eq!(crossings_of(&ig, &initial_order(&layer)), 1);
        assert_eq!(crossings_of(&ig, &order_indexed(&ig, &layer, 8)), 0);
    }

    #[test]
    fn no_edges_keeps_order() {
        let g = DirectedGraph::from_pairs(&["c", "a", "b"], &[]);
        assert_eq!(order(&g), vec![vec!["a", "b", "c"]]);
    }

    #[test]
    fn complete_bipartite_keeps_one_crossing() {
        let g = DirectedGraph::from_pairs(&[], &[("u1", "v1"), ("u1", "v2"), ("u2", "v1"), ("u2", "v2")]);
        let ig = g.indexed();
        let layer = crate::layout::layering::layers_indexed(&ig).unwrap();
        assert_eq!(crossings_of(&ig, &order_indexed(&ig, &layer, 8)), 1);
    }

    #[test]
    fn unit_positions_centre_short_layers() {
        let pts = unit_positions(4, &[vec![0], vec![1, 2, 3]]);
        assert_eq!(pts[0], Point::new(1.0, 0.0));
        assert_eq!(pts[3], Point::new(2.0, 1.0));
    }
}
