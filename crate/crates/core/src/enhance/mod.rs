//! Shape-change enhancement phases run on the supergraph layout: making more
//! leaves hull-relevant, deforming the hull at outer changes, and opening
//! white space at inner changes. Every move is checked against the
//! aesthetics guard and reverted when it fails.

mod increase;
mod inner;
mod outer;
mod pipeline;
mod relevance;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ChangeSet, Edge, NodeId};
use crate::layout::Layout;

pub use inner::{displacement, inner_geometry, InnerGeometry};
pub use pipeline::{run_base, run_pipeline, Pipeline, PipelineReport, PipelineResult, ViewScores};
pub use relevance::{edge_samples, is_outer_shape_relevant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Approach {
    Ws1,
    Ws2,
    Ws3,
    Ws4,
}

impl Approach {
    pub const ALL: [Approach; 4] = [Approach::Ws1, Approach::Ws2, Approach::Ws3, Approach::Ws4];

    pub fn vertical(self) -> bool {
        matches!(self, Approach::Ws3 | Approach::Ws4)
    }

    pub fn proportional(self) -> bool {
        matches!(self, Approach::Ws2 | Approach::Ws4)
    }
}

impl fmt::Display for Approach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Approach::Ws1 => "ws1",
            Approach::Ws2 => "ws2",
            Approach::Ws3 => "ws3",
            Approach::Ws4 => "ws4",
        })
    }
}

impl std::str::FromStr for Approach {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ws1" => Ok(Approach::Ws1),
            "ws2" => Ok(Approach::Ws2),
            "ws3" => Ok(Approach::Ws3),
            "ws4" => Ok(Approach::Ws4),
            other => Err(Error::Config(format!("unknown approach {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnhanceConfig {
    pub outer_adaption: f64,
    pub inner_adaption: f64,
    pub hausdorff_threshold: f64,
    pub whitespace_threshold: f64,
    pub aesthetics_tolerance: f64,
    pub max_iterations: usize,
    pub inner_approach: Approach,
}

impl Default for EnhanceConfig {
    fn default() -> Self {
        Self {
            outer_adaption: 80.0,
            inner_adaption: 160.0,
            hausdorff_threshold: 30.0 / 200.0,
            whitespace_threshold: 0.05,
            aesthetics_tolerance: 0.10,
            max_iterations: 10,
            inner_approach: Approach::Ws3,
        }
    }
}

impl EnhanceConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("outer_adaption", self.outer_adaption), ("inner_adaption", self.inner_adaption)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive")));
            }
        }
        for (name, v) in [
            ("hausdorff_threshold", self.hausdorff_threshold),
            ("whitespace_threshold", self.whitespace_threshold),
            ("aesthetics_tolerance", self.aesthetics_tolerance),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Config(format!("{name} must lie in (0, 1)")));
            }
        }
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    ThresholdMet,
    AestheticsReset,
    IterationCap,
    NotApplicable,
    /// The last step did not move the measured quantity towards the target.
    NoProgress,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnhancementKind {
    Increase,
    OuterMove,
    OuterSplit,
    OuterEdge,
    Inner(Approach),
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnhancementOutcome {
    #[serde(skip)]
    pub layout: Layout,
    pub kind: EnhancementKind,
    pub applied: bool,
    pub iterations_used: usize,
    pub reason: Reason,
}

impl EnhancementOutcome {
    fn unchanged(layout: &Layout, kind: EnhancementKind, reason: Reason) -> Self {
        Self { layout: layout.clone(), kind, applied: false, iterations_used: 0, reason }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "element")]
pub enum ChangeElement {
    Node { id: NodeId },
    Edge { edge: Edge },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Added,
    Removed,
}

/// One node or edge change. A node change carries the changed edges incident
/// to it, so those are not enhanced separately.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Change {
    #[serde(flatten)]
    pub element: ChangeElement,
    pub direction: Direction,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub incident: Vec<Edge>,
}

/// Splits a change set into node changes (with their incident changed edges)
/// and the remaining edge changes.
pub fn changes_of(cs: &ChangeSet) -> Vec<Change> {
    let mut out = Vec::new();
    let mut folded = std::collections::BTreeSet::new();
    for (nodes, edges, direction) in [
        (&cs.added_nodes, &cs.added_edges, Direction::Added),
        (&cs.removed_nodes, &cs.removed_edges, Direction::Removed),
    ] {
        for n in nodes {
            let incident: Vec<Edge> = edges.iter().filter(|e| e.touches(n)).cloned().collect();
            folded.extend(incident.iter().cloned());
            out.push(Change { element: ChangeElement::Node { id: n.clone() }, direction, incident });
        }
    }
    for (edges, direction) in [(&cs.added_edges, Direction::Added), (&cs.removed_edges, Direction::Removed)] {
        for e in edges {
            if !folded.contains(e) {
                out.push(Change { element: ChangeElement::Edge { edge: e.clone() }, direction, incident: Vec::new() });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{diff, DirectedGraph};

    #[test]
    fn incident_edges_fold_into_node_change() {
        let base = DirectedGraph::from_pairs(&[], &[("A", "B"), ("B", "C")]);
        let alt = DirectedGraph::from_pairs(&[], &[("A", "B"), ("B", "C"), ("A", "D"), ("D", "C"), ("A", "C")]);
        let changes = changes_of(&diff(&base, &alt).unwrap());
        assert_eq!(changes.len(), 2);
        assert_eq!(changes[0].element, ChangeElement::Node { id: "D".into() });
        assert_eq!(changes[0].incident.len(), 2);
        assert_eq!(changes[1].element, ChangeElement::Edge { edge: Edge::new("A", "C") });
    }

    #[test]
    fn approach_parses() {
        assert_eq!("WS3".parse::<Approach>().unwrap(), Approach::Ws3);
        assert!("ws9".parse::<Approach>().is_err());
    }

    #[test]
    fn defaults_validate() {
        EnhanceConfig::default().validate().unwrap();
        assert!(EnhanceConfig { max_iterations: 0, ..Default::default() }.validate().is_err());
    }
}
