use thiserror::Error;

use crate::graph::{NodeId, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {}", format_violations(.0))]
    InvalidGraph(Vec<Violation>),

    /// Base and alternative orient some path in opposite directions.
    #[error("unsupported pair: the union of base and alternative contains the cycle {}", format_path(.0))]
    CyclicUnion(Vec<NodeId>),

    #[error("node {0} is missing from the layout")]
    MissingNode(NodeId),

    #[error("layout is empty")]
    EmptyLayout,

    #[error("degenerate geometry: {0}")]
    Degenerate(&'static str),

    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{0}")]
    Output(String),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn format_path(p: &[NodeId]) -> String {
    p.iter().map(NodeId::as_str).collect::<Vec<_>>().join(" -> ")
}
