use std::collections::BTreeSet;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{diff, ChangeSet, DirectedGraph, Edge, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChangeType {
    AddNode,
    RemoveNode,
    AddEdge,
    RemoveEdge,
    #[serde(rename = "add_3_nodes")]
    Add3Nodes,
    #[serde(rename = "add_1_node_2_edges")]
    Add1Node2Edges,
}

impl ChangeType {
    pub const ALL: [ChangeType; 6] = [
        ChangeType::AddNode,
        ChangeType::RemoveNode,
        ChangeType::AddEdge,
        ChangeType::RemoveEdge,
        ChangeType::Add3Nodes,
        ChangeType::Add1Node2Edges,
    ];

    pub fn is_multiple(self) -> bool {
        matches!(self, ChangeType::Add3Nodes | ChangeType::Add1Node2Edges)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ChangeType::AddNode => "add_node",
            ChangeType::RemoveNode => "remove_node",
            ChangeType::AddEdge => "add_edge",
            ChangeType::RemoveEdge => "remove_edge",
            ChangeType::Add3Nodes => "add_3_nodes",
            ChangeType::Add1Node2Edges => "add_1_node_2_edges",
        }
    }
}

impl std::fmt::Display for ChangeType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ChangeType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown change type {s:?}")))
    }
}

fn node_name(i: usize, n: usize) -> NodeId {
    let width = n.saturating_sub(1).to_string().len();
    NodeId::new(format!("n{i:0width$}"))
}

/// Random connected DAGs: a random topological order, a spanning arborescence
/// along it, then uniform forward edges up to the edge count.
pub fn generate_base_graphs(count: usize, n_nodes: usize, n_edges: usize, seed: u64) -> Result<Vec<DirectedGraph>> {
    if count == 0 || n_nodes == 0 {
        return Err(Error::InfeasibleParameters("count and node count must be positive".into()));
    }
    let max = n_nodes * (n_nodes - 1) / 2;
    if n_edges > max || n_edges + 1 < n_nodes {
        return Err(Error::InfeasibleParameters(format!(
            "{n_edges} edges on {n_nodes} nodes: need between {} and {max}",
            n_nodes - 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| one_graph(&mut rng, n_nodes, n_edges)).collect())
}

fn one_graph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> DirectedGraph {
    let ids: Vec<NodeId> = (0..n).map(|i| node_name(i, n)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs = BTreeSet::new();
    for i in 1..n {
        let p = rng.gen_range(0..i);
        pairs.insert((p, i));
    }
    let free: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|p| !pairs.contains(p)).collect();
    for k in index::sample(rng, free.len(), m - pairs.len()) {
        pairs.insert(free[k]);
    }
    let edges = pairs.into_iter().map(|(i, j)| Edge { source: ids[order[i]].clone(), target: ids[order[j]].clone() });
    DirectedGraph::new(ids.iter().cloned(), edges)
}

fn fresh(base: &DirectedGraph, k: usize) -> NodeId {
    let mut i = k;
    loop {
        let id = NodeId::new(format!("new{i}"));
        if !base.contains_node(&id) {
            return id;
        }
        i += 1;
    }
}

/// Every placement of a change of the given type; the two multi-change
/// types draw at most `cap` distinct placements.
pub fn generate_alternatives(
    base: &DirectedGraph,
    change_type: ChangeType,
    seed: u64,
    cap: usize,
) -> Vec<(DirectedGraph, ChangeSet)> {
    let topo = base.topological_order().expect("base graphs are valid");
    let mut alts = Vec::new();
    let mut push = |g: DirectedGraph| {
        let cs = diff(base, &g).expect("both graphs valid");
        alts.push((g, cs));
    };
    match change_type {
        ChangeType::AddNode => {
            let id = fresh(base, 0);
            for p in &topo {
                let mut g = base.clone();
                g.add_node(id.clone());
                g.add_edge(Edge { source: p.clone(), target: id.clone() });
                push(g);
            }
        }
        ChangeType::RemoveNode => {
            for n in &topo {
                let mut g = base.clone();
                g.remove_node(n);
                push(g);
            }
        }
        ChangeType::AddEdge => {
            for (i, a) in topo.iter().enumerate() {
                for b in &topo[i + 1..] {
                    let e = Edge { source: a.clone(), target: b.clone() };
                    if !base.contains_edge(&e) {
                        let mut g = base.clone();
                        g.add_edge(e);
                        push(g);
                    }
                }
            }
        }
        ChangeType::RemoveEdge => {
            for e in base.edges() {
                let mut g = base.clone();
                g.remove_edge(e);
                push(g);
            }
        }
        ChangeType::Add3Nodes => {
            let n = topo.len();
            let ids = [fresh(base, 0), fresh(base, 1), fresh(base, 2)];
            for parents in sample_tuples(n * (n + 1) * (n + 2) / 6, cap, seed, |rng| {
                let mut t = vec![rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
                t.sort_unstable();
                t
            }) {
                let mut g = base.clone();
                for (id, p) in ids.iter().zip(parents) {
                    g.add_node(id.clone());
                    g.add_edge(Edge { source: topo[p].clone(), target: id.clone() });
                }
                push(g);
            }
        }
        ChangeType::Add1Node2Edges => {
            let n = topo.len();
            if n >= 2 {
                let id = fresh(base, 0);
                for t in sample_tuples(n * (n - 1) / 2, cap, seed, |rng| {
                    let mut t = index::sample(rng, n, 2).into_vec();
                    t.sort_unstable();
                    t
                }) {
                    let mut g = base.clone();
                    g.add_node(id.clone());
                    g.add_edge(Edge { source: topo[t[0]].clone(), target: id.clone() });
                    g.add_edge(Edge { source: id.clone(), target: topo[t[1]].clone() });
                    push(g);
                }
            }
        }
    }
    alts
}

/// Up to `cap` distinct draws, in sorted order. `space` bounds the number of
/// distinct values `draw` can produce.
fn sample_tuples(space: usize, cap: usize, seed: u64, mut draw: impl FnMut(&mut ChaCha8Rng) -> Vec<usize>) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let want = cap.min(space);
    let mut tries = 0;
    while seen.len() < want && tries < want * 64 {
        seen.insert(draw(&mut rng));
        tries += 1;
    }
    seen.into_iter().collect()
}
