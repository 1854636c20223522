//! Comparative DAG layout: a layered base layout laid out once on the union
//! of two graphs, enhanced so that differences deform the drawing's hull or
//! open white space around them, plus the metrics to measure the effect.

pub mod aesthetics;
pub mod enhance;
pub mod error;
pub mod eval;
pub mod geometry;
pub mod graph;
pub mod layout;
pub mod render;

pub use aesthetics::{count_edge_crossings, score_aesthetics, AestheticWeights, AestheticsScore, Criteria};
pub use error::{Error, Result};
pub use geometry::{concave_hull, HullConfig, HullPolygon, InscribedCircle, Point, Polygon};
pub use graph::{build_supergraph, diff, ChangeSet, DirectedGraph, Edge, Membership, NodeId, Supergraph, Violation};
pub use enhance::{run_base, run_pipeline, Approach, Change, EnhanceConfig, Pipeline, PipelineReport, PipelineResult};
pub use eval::{evaluate, ChangeType, EvalConfig, MetricReport};
pub use layout::{layout_graph, layout_supergraph, restrict, Layout, LayoutConfig, Rank};
pub use render::{render_svg, Highlight, Overlay, ViewBox};
