//! Randomized evaluation: corpus generation, every placement of each change
//! type, base against enhanced metrics, and aggregation into tables.

mod generate;
mod report;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aesthetics::count_edge_crossings;
use crate::enhance::{Approach, EnhanceConfig, Pipeline, PipelineResult};
use crate::error::{Error, Result};
use crate::geometry::{intersection_over_union, normalized_hausdorff, HullConfig};
use crate::graph::DirectedGraph;
use crate::layout::{Layout, LayoutConfig};

pub use generate::{generate_alternatives, generate_base_graphs, ChangeType};
pub use report::{aggregate, GroupStats, MetricReport, Section};

/// Which metric an alternative is judged by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Single hull-relevant change: normalized Hausdorff distance.
    Outer,
    /// Single change inside the hull: relative white space.
    Inner,
    /// Several simultaneous changes: 1 - IoU of the two hulls.
    Multiple,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalConfig {
    pub count: usize,
    pub nodes: usize,
    pub edges: usize,
    pub seed: u64,
    pub multi_cap: usize,
    pub change_types: Vec<ChangeType>,
    pub approaches: Vec<Approach>,
    pub layout: LayoutConfig,
    pub hull: HullConfig,
    pub enhance: EnhanceConfig,
    pub workers: Option<usize>,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            count: 10,
            nodes: 21,
            edges: 61,
            seed: 1,
            multi_cap: 200,
            change_types: ChangeType::ALL.to_vec(),
            approaches: vec![Approach::Ws1, Approach::Ws3, Approach::Ws4],
            layout: LayoutConfig::default(),
            hull: HullConfig::default(),
            enhance: EnhanceConfig::default(),
            workers: None,
        }
    }
}

/// One evaluated alternative under one approach. Outer rows carry no
/// approach since the inner approach does not affect them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub base: usize,
    pub alternative: usize,
    pub change_type: ChangeType,
    pub family: Family,
    pub approach: Option<Approach>,
    pub normalized_hausdorff_base: f64,
    pub normalized_hausdorff_enh: f64,
    pub iou_base: f64,
    pub iou_enh: f64,
    pub rel_whitespace_base: Option<f64>,
    pub rel_whitespace_enh: Option<f64>,
    pub aesthetics_base: f64,
    pub aesthetics_enh: f64,
    /// Smallest final/initial aesthetics ratio over the supergraph and both views.
    pub aesthetics_retained: f64,
    pub crossings_base: usize,
    pub crossings_enh: usize,
}

impl Row {
    pub fn metric_base(&self) -> f64 {
        match self.family {
            Family::Outer => self.normalized_hausdorff_base,
            Family::Inner => self.rel_whitespace_base.unwrap_or(0.0),
            Family::Multiple => 1.0 - self.iou_base,
        }
    }

    pub fn metric_enh(&self) -> f64 {
        match self.family {
            Family::Outer => self.normalized_hausdorff_enh,
            Family::Inner => self.rel_whitespace_enh.unwrap_or(0.0),
            Family::Multiple => 1.0 - self.iou_enh,
        }
    }
}

struct Shape {
    hausdorff: f64,
    iou: f64,
    crossings: usize,
}

fn shape_of(p: &Pipeline, layout: &Layout) -> Shape {
    let (hb, ha) = p.hulls(layout);
    Shape {
        hausdorff: normalized_hausdorff(&hb, &ha, p.hull_cfg.ray_spacing / 2.0).unwrap_or(0.0),
        iou: intersection_over_union(&hb, &ha).unwrap_or(1.0),
        crossings: count_edge_crossings(layout),
    }
}

/// Base and enhanced measurements for one pair, one row per relevant approach.
pub fn evaluate_pair(
    base: &DirectedGraph,
    alternative: &DirectedGraph,
    change_type: ChangeType,
    cfg: &EvalConfig,
) -> Result<Vec<Row>> {
    let approaches = if cfg.approaches.is_empty() { vec![cfg.enhance.inner_approach] } else { cfg.approaches.clone() };
    let p = Pipeline::new(base, alternative, &cfg.layout, &cfg.hull, &cfg.enhance)?;
    let increase = p.increase_outer_relevant(&p.initial);
    let before = shape_of(&p, &p.initial);
    let single = !change_type.is_multiple();
    let change = p.changes.first().cloned().ok_or(Error::Degenerate("pair without changes"))?;

    let row = |approach: Option<Approach>, family: Family, r: &PipelineResult| {
        let after = shape_of(&p, &r.supergraph_layout);
        let init = &r.report.initial_aesthetics;
        let fin = &r.report.final_aesthetics;
        let retained = [
            (init.supergraph.average, fin.supergraph.average),
            (init.base.average, fin.base.average),
            (init.alternative.average, fin.alternative.average),
        ]
        .into_iter()
        .map(|(a, b)| if a > 0.0 { b / a } else { 1.0 })
        .fold(f64::INFINITY, f64::min);
        let (ws_base, ws_enh) = if family == Family::Inner {
            (Some(p.relative_whitespace(&p.initial, &change)), Some(p.relative_whitespace(&r.supergraph_layout, &change)))
        } else {
            (None, None)
        };
        Row {
            base: 0,
            alternative: 0,
            change_type,
            family,
            approach,
            normalized_hausdorff_base: before.hausdorff,
            normalized_hausdorff_enh: after.hausdorff,
            iou_base: before.iou,
            iou_enh: after.iou,
            rel_whitespace_base: ws_base,
            rel_whitespace_enh: ws_enh,
            aesthetics_base: init.supergraph.average,
            aesthetics_enh: fin.supergraph.average,
            aesthetics_retained: retained,
            crossings_base: before.crossings,
            crossings_enh: after.crossings,
        }
    };

    let first = p.run_from(increase.clone(), approaches[0])?;
    if single && first.report.changes.first().is_some_and(|c| c.outer) {
        return Ok(vec![row(None, Family::Outer, &first)]);
    }
    let family = if single { Family::Inner } else { Family::Multiple };
    let mut rows = vec![row(Some(approaches[0]), family, &first)];
    for &a in &approaches[1..] {
        let r = p.run_from(increase.clone(), a)?;
        rows.push(row(Some(a), family, &r));
    }
    Ok(rows)
}

struct Job {
    base: usize,
    alternative: usize,
    change_type: ChangeType,
    graph: DirectedGraph,
}

/// Runs the whole evaluation. Pairs run in parallel; rows come back in job
/// order, so the report does not depend on the worker count.
pub fn evaluate(cfg: &EvalConfig) -> Result<MetricReport> {
    cfg.layout.validate()?;
    cfg.hull.validate()?;
    cfg.enhance.validate()?;
    let corpus = generate_base_graphs(cfg.count, cfg.nodes, cfg.edges, cfg.seed)?;
    let mut jobs = Vec::new();
    for (bi, g) in corpus.iter().enumerate() {
        for (ti, &t) in cfg.change_types.iter().enumerate() {
            let seed = cfg.seed.wrapping_mul(1_000_003).wrapping_add((bi * 16 + ti) as u64);
            for (ai, (alt, _)) in generate_alternatives(g, t, seed, cfg.multi_cap).into_iter().enumerate() {
                jobs.push(Job { base: bi, alternative: ai, change_type: t, graph: alt });
            }
        }
    }
    let run = || -> Vec<Result<Vec<Row>>> {
        jobs.par_iter()
            .map(|j| {
                evaluate_pair(&corpus[j.base], &j.graph, j.change_type, cfg).map(|mut rows| {
                    for r in &mut rows {
                        r.base = j.base;
                        r.alternative = j.alternative;
                    }
                    rows
                })
            })
            .collect()
    };
    let results = match cfg.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(run),
        None => run(),
    };
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (j, r) in jobs.iter().zip(results) {
        match r {
            Ok(rs) => rows.extend(rs),
            Err(e) => failures.push(format!("base {} {} #{}: {e}", j.base, j.change_type, j.alternative)),
        }
    }
    Ok(aggregate(rows, failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_metrics_are_all_equal() {
        let g = DirectedGraph::from_pairs(&[], &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]);
        let mut alt = g.clone();
        alt.add_edge(crate::graph::Edge::new("a", "d"));
        let rows = evaluate_pair(&g, &alt, ChangeType::AddEdge, &EvalConfig::default()).unwrap();
        assert!(!rows.is_empty());
        for r in &rows {
            assert!(r.aesthetics_retained >= 0.9 - 1e-12);
        }
    }

    #[test]
    fn tiny_run_is_deterministic() {
        let cfg = EvalConfig {
            count: 1,
            nodes: 6,
            edges: 8,
            multi_cap: 5,
            ..Default::default()
        };
        let a = evaluate(&cfg).unwrap();
        let b = evaluate(&EvalConfig { workers: Some(1), ..cfg }).unwrap();
        assert_eq!(a.rows, b.rows);
        assert!(a.failures.is_empty());
    }
}
