//! Fixtures shared by the benchmarks.

use dagshape_core::eval::{generate_alternatives, generate_base_graphs};
use dagshape_core::{ChangeType, DirectedGraph};

pub const SEED: u64 = 7;

/// A random base graph of the evaluation's size, 21 nodes and 61 edges.
pub fn base_graph() -> DirectedGraph {
    generate_base_graphs(1, 21, 61, SEED).expect("feasible size").remove(0)
}

/// The `index`-th alternative of one change type, wrapping around.
pub fn alternative(base: &DirectedGraph, change_type: ChangeType, index: usize) -> DirectedGraph {
    let mut alts = generate_alternatives(base, change_type, SEED, 8);
    let i = index % alts.len();
    alts.swap_remove(i).0
}
