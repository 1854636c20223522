use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, IndexedGraph, NodeId, Violation};

/// Longest-path layering: every source sits on layer 0 and every other node
/// one layer below its deepest predecessor.
pub fn assign_layers_longest_path(g: &DirectedGraph) -> Result<BTreeMap<NodeId, usize>> {
    let ig = g.indexed();
    let layers = layers_indexed(&ig).ok_or_else(|| {
        Error::InvalidGraph(g.validate().into_iter().filter(|v| matches!(v, Violation::Cycle(_))).collect())
    })?;
    Ok(ig.ids.iter().cloned().zip(layers).collect())
}

pub(crate) fn layers_indexed(ig: &IndexedGraph) -> Option<Vec<usize>> {
    let order = ig.topological_order()?;
    let mut layer = vec![0usize; ig.len()];
    for v in order {
        for &w in &ig.succ[v] {
            layer[w] = layer[w].max(layer[v] + 1);
        }
    }
    Some(layer)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layers(edges: &[(&str, &str)]) -> Vec<(String, usize)> {
        let g = DirectedGraph::from_pairs(&[], edges);
        assign_layers_longest_path(&g)
            .unwrap()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect()
    }

    fn expect(v: &[(&str, usize)]) -> Vec<(String, usize)> {
        v.iter().map(|(k, l)| (k.to_string(), *l)).collect()
    }

    #[test]
    fn chain() {
        assert_eq!(layers(&[("A", "B"), ("B", "C")]), expect(&[("A", 0), ("B", 1), ("C", 2)]));
    }

    #[test]
    fn shortcut_takes_longer_path() {
        assert_eq!(
            layers(&[("A", "B"), ("A", "C"), ("B", "C")]),
            expect(&[("A", 0), ("B", 1), ("C", 2)])
        );
    }

    #[test]
    fn diamond() {
        assert_eq!(
            layers(&[("A", "B"), ("A", "C"), ("B", "D"), ("C", "D")]),
            expect(&[("A", 0), ("B", 1), ("C", 1), ("D", 2)])
        );
    }

    #[test]
    fn several_sources_share_layer_zero() {
        assert_eq!(layers(&[("A", "C"), ("B", "C")]), expect(&[("A", 0), ("B", 0), ("C", 1)]));
    }

    #[test]
    fn cycle_is_an_error() {
        let g = DirectedGraph::from_pairs(&[], &[("A", "B"), ("B", "A")]);
        assert!(matches!(assign_layers_longest_path(&g), Err(Error::InvalidGraph(_))));
    }
}
