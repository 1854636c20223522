//! Graph data model: directed acyclic graphs, their differences, and the
//! supergraph that a base/alternative pair is laid out on.
//!
//! Node identity across graphs is by identifier string. All collections are
//! ordered (`BTreeSet`/`BTreeMap`) so every traversal below is deterministic.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Opaque node identifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

impl From<String> for NodeId {
    fn from(s: String) -> Self {
        Self(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub source: NodeId,
    pub target: NodeId,
}

impl Edge {
    pub fn new(source: impl Into<NodeId>, target: impl Into<NodeId>) -> Self {
        Self { source: source.into(), target: target.into() }
    }

    pub fn touches(&self, node: &NodeId) -> bool {
        &self.source == node || &self.target == node
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.source, self.target)
    }
}

/// A structural problem found by [`DirectedGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SelfLoop(NodeId),
    DanglingEndpoint { edge: Edge, missing: NodeId },
    /// Witness path, first node repeated at the end.
    Cycle(Vec<NodeId>),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoop(n) => write!(f, "self-loop on {n}"),
            Violation::DanglingEndpoint { edge, missing } => {
                write!(f, "edge {edge} references unknown node {missing}")
            }
            Violation::Cycle(path) => {
                let p: Vec<_> = path.iter().map(NodeId::as_str).collect();
                write!(f, "cycle {}", p.join(" -> "))
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DirectedGraph {
    nodes: BTreeSet<NodeId>,
    edges: BTreeSet<Edge>,
}

impl DirectedGraph {
    /// Builds a graph without validating it; see [`DirectedGraph::validated`].
    pub fn new(
        nodes: impl IntoIterator<Item = NodeId>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Self {
        Self { nodes: nodes.into_iter().collect(), edges: edges.into_iter().collect() }
    }

    pub fn validated(
        nodes: impl IntoIterator<Item = NodeId>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let g = Self::new(nodes, edges);
        g.ensure_valid()?;
        Ok(g)
    }

    /// Convenience constructor from string pairs; nodes are taken from `nodes`
    /// plus every edge endpoint.
    pub fn from_pairs(nodes: &[&str], edges: &[(&str, &str)]) -> Self {
        let mut ns: BTreeSet<NodeId> = nodes.iter().map(|n| NodeId::from(*n)).collect();
        let es: BTreeSet<Edge> = edges
            .iter()
            .map(|(s, t)| {
                ns.insert(NodeId::from(*s));
                ns.insert(NodeId::from(*t));
                Edge::new(*s, *t)
            })
            .collect();
        Self { nodes: ns, edges: es }
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_node(&self, n: &NodeId) -> bool {
        self.nodes.contains(n)
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn add_node(&mut self, n: NodeId) -> bool {
        self.nodes.insert(n)
    }

    pub fn add_edge(&mut self, e: Edge) -> bool {
        self.edges.insert(e)
    }

    /// Removes the node together with its incident edges.
    pub fn remove_node(&mut self, n: &NodeId) -> bool {
        self.edges.retain(|e| !e.touches(n));
        self.nodes.remove(n)
    }

    pub fn remove_edge(&mut self, e: &Edge) -> bool {
        self.edges.remove(e)
    }

    pub fn incident_edges<'a>(&'a self, n: &'a NodeId) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| e.touches(n))
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(v))
        }
    }

    /// Lists every violation: self-loops, dangling endpoints, and at most one
    /// cycle witness. An empty result means the graph is a valid DAG.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.source == e.target {
                out.push(Violation::SelfLoop(e.source.clone()));
            }
            for end in [&e.source, &e.target] {
                if !self.nodes.contains(end) {
                    out.push(Violation::DanglingEndpoint { edge: e.clone(), missing: end.clone() });
                }
            }
        }
        if let Some(cycle) = self.find_cycle() {
            out.push(Violation::Cycle(cycle));
        }
        out
    }

    /// Iterative three-colour DFS. Self-loops are reported separately and
    /// skipped here; edges to unknown nodes are followed as if they existed.
    fn find_cycle(&self) -> Option<Vec<NodeId>> {
        let mut succ: BTreeMap<&NodeId, Vec<&NodeId>> = BTreeMap::new();
        for e in &self.edges {
            if e.source != e.target {
                succ.entry(&e.source).or_default().push(&e.target);
            }
        }
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Open,
            Done,
        }
        let mut mark: HashMap<&NodeId, Mark> = HashMap::new();
        let starts: Vec<&NodeId> = succ.keys().copied().collect();
        for start in starts {
            if mark.contains_key(start) {
                continue;
            }
            let mut stack: Vec<(&NodeId, usize)> = vec![(start, 0)];
            mark.insert(start, Mark::Open);
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                let children = succ.get(node).map(Vec::as_slice).unwrap_or(&[]);
                if *next < children.len() {
                    let child = children[*next];
                    *next += 1;
                    match mark.get(child) {
                        None => {
                            mark.insert(child, Mark::Open);
                            stack.push((child, 0));
                        }
                        Some(Mark::Open) => {
                            let pos = stack.iter().position(|(n, _)| *n == child).unwrap();
                            let mut path: Vec<NodeId> =
                                stack[pos..].iter().map(|(n, _)| (*n).clone()).collect();
                            path.push(child.clone());
                            return Some(path);
                        }
                        Some(Mark::Done) => {}
                    }
                } else {
                    mark.insert(node, Mark::Done);
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn indexed(&self) -> IndexedGraph {
        IndexedGraph::new(self)
    }

    /// Kahn order with ties broken by identifier.
    pub fn topological_order(&self) -> Result<Vec<NodeId>> {
        let ig = self.indexed();
        let order = ig.topological_order().ok_or_else(|| {
            Error::InvalidGraph(self.find_cycle().map(Violation::Cycle).into_iter().collect())
        })?;
        Ok(order.into_iter().map(|i| ig.ids[i].clone()).collect())
    }

    /// Applies a change set: removals first, then additions.
    pub fn apply(&self, changes: &ChangeSet) -> DirectedGraph {
        let mut g = self.clone();
        for e in &changes.removed_edges {
            g.remove_edge(e);
        }
        for n in &changes.removed_nodes {
            g.remove_node(n);
        }
        for n in &changes.added_nodes {
            g.add_node(n.clone());
        }
        for e in &changes.added_edges {
            g.add_edge(e.clone());
        }
        g
    }
}

/// Dense index view of a [`DirectedGraph`]; node `i` is the i-th identifier in
/// sorted order.
#[derive(Debug, Clone)]
pub struct IndexedGraph {
    pub ids: Vec<NodeId>,
    pub index: HashMap<NodeId, usize>,
    pub succ: Vec<Vec<usize>>,
    pub pred: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

impl IndexedGraph {
    fn new(g: &DirectedGraph) -> Self {
        let ids: Vec<NodeId> = g.nodes.iter().cloned().collect();
        let index: HashMap<NodeId, usize> =
            ids.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let mut succ = vec![Vec::new(); ids.len()];
        let mut pred = vec![Vec::new(); ids.len()];
        let mut edges = Vec::with_capacity(g.edges.len());
        for e in &g.edges {
            if let (Some(&s), Some(&t)) = (index.get(&e.source), index.get(&e.target)) {
                succ[s].push(t);
                pred[t].push(s);
                edges.push((s, t));
            }
        }
        Self { ids, index, succ, pred, edges }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut indeg: Vec<usize> = self.pred.iter().map(Vec::len).collect();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &w in &self.succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }
}

/// Added and removed elements relating a base graph to an alternative.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChangeSet {
    pub added_nodes: BTreeSet<NodeId>,
    pub removed_nodes: BTreeSet<NodeId>,
    pub added_edges: BTreeSet<Edge>,
    pub removed_edges: BTreeSet<Edge>,
}

impl ChangeSet {
    pub fn is_empty(&self) -> bool {
        self.added_nodes.is_empty()
            && self.removed_nodes.is_empty()
            && self.added_edges.is_empty()
            && self.removed_edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.added_nodes.len()
            + self.removed_nodes.len()
            + self.added_edges.len()
            + self.removed_edges.len()
    }

    /// The same change seen from the alternative's side.
    pub fn inverse(&self) -> ChangeSet {
        ChangeSet {
            added_nodes: self.removed_nodes.clone(),
            removed_nodes: self.added_nodes.clone(),
            added_edges: self.removed_edges.clone(),
            removed_edges: self.added_edges.clone(),
        }
    }
}

/// Set differences in both directions.
pub fn diff(base: &DirectedGraph, alternative: &DirectedGraph) -> Result<ChangeSet> {
    base.ensure_valid()?;
    alternative.ensure_valid()?;
    Ok(ChangeSet {
        added_nodes: alternative.nodes.difference(&base.nodes).cloned().collect(),
        removed_nodes: base.nodes.difference(&alternative.nodes).cloned().collect(),
        added_edges: alternative.edges.difference(&base.edges).cloned().collect(),
        removed_edges: base.edges.difference(&alternative.edges).cloned().collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    BaseOnly,
    AlternativeOnly,
    Both,
}

impl Membership {
    fn of(in_base: bool, in_alt: bool) -> Self {
        match (in_base, in_alt) {
            (true, true) => Membership::Both,
            (true, false) => Membership::BaseOnly,
            (false, true) => Membership::AlternativeOnly,
            (false, false) => unreachable!("element belongs to neither graph"),
        }
    }

    pub fn in_base(self) -> bool {
        matches!(self, Membership::BaseOnly | Membership::Both)
    }

    pub fn in_alternative(self) -> bool {
        matches!(self, Membership::AlternativeOnly | Membership::Both)
    }
}

/// Union of a base graph and an alternative with per-element membership.
#[derive(Debug, Clone, PartialEq)]
pub struct Supergraph {
    pub graph: DirectedGraph,
    pub node_membership: BTreeMap<NodeId, Membership>,
    pub edge_membership: BTreeMap<Edge, Membership>,
}

impl Supergraph {
    pub fn membership_of_node(&self, n: &NodeId) -> Option<Membership> {
        self.node_membership.get(n).copied()
    }

    pub fn membership_of_edge(&self, e: &Edge) -> Option<Membership> {
        self.edge_membership.get(e).copied()
    }

    /// Rebuilds the base graph from the membership tags.
    pub fn base(&self) -> DirectedGraph {
        self.project(Membership::in_base)
    }

    pub fn alternative(&self) -> DirectedGraph {
        self.project(Membership::in_alternative)
    }

    fn project(&self, keep: fn(Membership) -> bool) -> DirectedGraph {
        DirectedGraph::new(
            self.node_membership.iter().filter(|(_, m)| keep(**m)).map(|(n, _)| n.clone()),
            self.edge_membership.iter().filter(|(_, m)| keep(**m)).map(|(e, _)| e.clone()),
        )
    }
}

pub fn build_supergraph(base: &DirectedGraph, alternative: &DirectedGraph) -> Result<Supergraph> {
    base.ensure_valid()?;
    alternative.ensure_valid()?;
    let graph = DirectedGraph {
        nodes: base.nodes.union(&alternative.nodes).cloned().collect(),
        edges: base.edges.union(&alternative.edges).cloned().collect(),
    };
    if let Some(cycle) = graph.find_cycle() {
        return Err(Error::CyclicUnion(cycle));
    }
    let node_membership = graph
        .nodes
        .iter()
        .map(|n| (n.clone(), Membership::of(base.contains_node(n), alternative.contains_node(n))))
        .collect();
    let edge_membership = graph
        .edges
        .iter()
        .map(|e| (e.clone(), Membership::of(base.contains_edge(e), alternative.contains_edge(e))))
        .collect();
    Ok(Supergraph { graph, node_membership, edge_membership })
}

/// JSON document: `{"nodes":[{"id":"A"}],"edges":[{"source":"A","target":"B"}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub nodes: Vec<NodeEntry>,
    #[serde(default)]
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeEntry {
    pub id: NodeId,
}

impl From<&DirectedGraph> for GraphDocument {
    fn from(g: &DirectedGraph) -> Self {
        Self {
            nodes: g.nodes.iter().map(|id| NodeEntry { id: id.clone() }).collect(),
            edges: g.edges.iter().cloned().collect(),
        }
    }
}

impl From<GraphDocument> for DirectedGraph {
    fn from(doc: GraphDocument) -> Self {
        DirectedGraph::new(doc.nodes.into_iter().map(|n| n.id), doc.edges)
    }
}
