use std::sync::Mutex;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::aesthetics::{accepts, score_aesthetics, AestheticsScore};
use crate::error::Result;
use crate::geometry::hull::hull_of;
use crate::geometry::{normalized_hausdorff, HullConfig, HullPolygon, Point};
use crate::graph::{build_supergraph, diff, DirectedGraph, Supergraph};
use crate::layout::{layout_supergraph, Layout, LayoutConfig};

use super::relevance::relevant_with;
use super::{changes_of, Approach, Change, ChangeElement, Direction, EnhanceConfig, EnhancementKind, EnhancementOutcome, Reason};

/// Aesthetics of the supergraph drawing and of both restricted drawings.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ViewScores {
    pub supergraph: AestheticsScore,
    pub base: AestheticsScore,
    pub alternative: AestheticsScore,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChangeOutcome {
    pub change: Change,
    pub outer: bool,
    pub outcome: EnhancementOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineReport {
    pub approach: Approach,
    pub increase: EnhancementOutcome,
    pub changes: Vec<ChangeOutcome>,
    pub initial_aesthetics: ViewScores,
    pub final_aesthetics: ViewScores,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineResult {
    pub supergraph_layout: Layout,
    pub base: Layout,
    pub alternative: Layout,
    pub report: PipelineReport,
}

/// Results already computed for this pair, keyed by exact inputs.
#[derive(Debug)]
pub(crate) struct Memo<K, V>(Mutex<FxHashMap<K, V>>);

impl<K, V> Default for Memo<K, V> {
    fn default() -> Self {
        Self(Mutex::new(FxHashMap::default()))
    }
}

impl<K, V> Clone for Memo<K, V> {
    fn clone(&self) -> Self {
        Self::default()
    }
}

impl<K: std::hash::Hash + Eq, V: Clone> Memo<K, V> {
    pub(crate) fn get_or(&self, key: K, compute: impl FnOnce() -> V) -> V {
        if let Some(v) = self.0.lock().expect("memo lock").get(&key) {
            return v.clone();
        }
        let v = compute();
        let mut memo = self.0.lock().expect("memo lock");
        if memo.len() >= MEMO_LIMIT {
            memo.clear();
        }
        memo.insert(key, v.clone());
        v
    }
}

/// Exact bit pattern of a drawing's coordinates.
pub(crate) fn coordinate_key(nodes: &[Point], segs: &[(Point, Point)]) -> Vec<u64> {
    let mut key = Vec::with_capacity(2 * nodes.len() + 4 * segs.len() + 1);
    key.extend(nodes.iter().flat_map(|p| [p.x.to_bits(), p.y.to_bits()]));
    key.push(u64::MAX);
    key.extend(segs.iter().flat_map(|(a, b)| [a.x.to_bits(), a.y.to_bits(), b.x.to_bits(), b.y.to_bits()]));
    key
}

const MEMO_LIMIT: usize = 4096;

/// Initialized comparison of one base/alternative pair. The supergraph layout
/// built here is the reference every guard check compares against.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub base: DirectedGraph,
    pub alternative: DirectedGraph,
    pub layout_cfg: LayoutConfig,
    pub hull_cfg: HullConfig,
    pub cfg: EnhanceConfig,
    pub supergraph: Supergraph,
    pub changes: Vec<Change>,
    pub initial: Layout,
    pub baseline: ViewScores,
    hulls: Memo<Vec<u64>, Result<HullPolygon>>,
    pub(crate) inner: Memo<(Change, Vec<u64>), Option<super::inner::InnerGeometry>>,
}

impl Pipeline {
    pub fn new(
        base: &DirectedGraph,
        alternative: &DirectedGraph,
        layout_cfg: &LayoutConfig,
        hull_cfg: &HullConfig,
        cfg: &EnhanceConfig,
    ) -> Result<Self> {
        layout_cfg.validate()?;
        hull_cfg.validate()?;
        cfg.validate()?;
        let supergraph = build_supergraph(base, alternative)?;
        let changes = changes_of(&diff(base, alternative)?);
        let initial = layout_supergraph(&supergraph, layout_cfg)?;
        let mut p = Self {
            base: base.clone(),
            alternative: alternative.clone(),
            layout_cfg: layout_cfg.clone(),
            hull_cfg: *hull_cfg,
            cfg: cfg.clone(),
            supergraph,
            changes,
            baseline: ViewScores::default(),
            initial,
            hulls: Memo::default(),
            inner: Memo::default(),
        };
        p.baseline = p.scores(&p.initial);
        Ok(p)
    }

    pub fn views(&self, layout: &Layout) -> (Layout, Layout) {
        (
            layout.restrict(&self.base).expect("supergraph layout holds every base node"),
            layout.restrict(&self.alternative).expect("supergraph layout holds every alternative node"),
        )
    }

    pub fn view(&self, layout: &Layout, direction: Direction) -> Layout {
        let g = match direction {
            Direction::Added => &self.alternative,
            Direction::Removed => &self.base,
        };
        layout.restrict(g).expect("supergraph layout holds every node")
    }

    pub(crate) fn score(&self, layout: &Layout) -> AestheticsScore {
        score_aesthetics(layout, &self.layout_cfg.weights, self.layout_cfg.horizontal_spacing)
    }

    pub fn scores(&self, layout: &Layout) -> ViewScores {
        let (b, a) = self.views(layout);
        ViewScores { supergraph: self.score(layout), base: self.score(&b), alternative: self.score(&a) }
    }

    /// Guard: every view keeps at least `1 - tolerance` of its initial score.
    pub fn accepts(&self, layout: &Layout) -> bool {
        let s = self.scores(layout);
        let tol = self.cfg.aesthetics_tolerance;
        accepts(self.baseline.supergraph.average, s.supergraph.average, tol)
            && accepts(self.baseline.base.average, s.base.average, tol)
            && accepts(self.baseline.alternative.average, s.alternative.average, tol)
    }

    pub fn hull(&self, layout: &Layout) -> HullPolygon {
        self.hull_of(&layout.points(), &layout.segments()).expect("layouts built here are non-empty")
    }

    pub(crate) fn hull_of(&self, nodes: &[Point], segs: &[(Point, Point)]) -> Result<HullPolygon> {
        self.hulls.get_or(coordinate_key(nodes, segs), || hull_of(nodes, segs, &self.hull_cfg))
    }

    pub fn hulls(&self, layout: &Layout) -> (HullPolygon, HullPolygon) {
        let (b, a) = self.views(layout);
        (self.hull(&b), self.hull(&a))
    }

    /// Normalized Hausdorff distance between the base and alternative hulls.
    pub fn shape_distance(&self, layout: &Layout) -> f64 {
        let (hb, ha) = self.hulls(layout);
        normalized_hausdorff(&hb, &ha, self.hull_cfg.ray_spacing / 2.0).unwrap_or(0.0)
    }

    pub fn is_relevant(&self, layout: &Layout, change: &Change) -> bool {
        let view = self.view(layout, change.direction);
        let hull = self.hull(&view);
        relevant_with(&view, &change.element, &hull, |n, s| self.hull_of(n, s))
    }

    /// Shared loop over a measured quantity: stop once it exceeds `target` or
    /// at the cap, otherwise move, then keep the move only if the guard
    /// accepts it and the quantity grew.
    pub(crate) fn iterate(
        &self,
        layout: &Layout,
        kind: EnhancementKind,
        measure: impl Fn(&Layout) -> f64,
        target: f64,
        mut step: impl FnMut(&mut Layout) -> bool,
    ) -> EnhancementOutcome {
        let mut cur = layout.clone();
        let mut value = measure(&cur);
        let mut accepted = 0;
        let mut attempts = 0;
        let reason = loop {
            if value > target {
                break Reason::ThresholdMet;
            }
            if attempts == self.cfg.max_iterations {
                break Reason::IterationCap;
            }
            attempts += 1;
            let snapshot = cur.positions.clone();
            if !step(&mut cur) {
                cur.positions = snapshot;
                break Reason::NotApplicable;
            }
            if !self.accepts(&cur) {
                cur.positions = snapshot;
                break Reason::AestheticsReset;
            }
            let next = measure(&cur);
            if !(next > value) {
                cur.positions = snapshot;
                break Reason::NoProgress;
            }
            value = next;
            accepted += 1;
        };
        EnhancementOutcome { layout: cur, kind, applied: accepted > 0, iterations_used: accepted, reason }
    }

    fn anchor(&self, layout: &Layout, change: &Change) -> Point {
        match &change.element {
            ChangeElement::Node { id } => layout.position(id).unwrap_or_default(),
            ChangeElement::Edge { edge } => layout.segment(edge).map(|(a, b)| a.midpoint(b)).unwrap_or_default(),
        }
    }

    /// Dispatches one change to the matching enhancement.
    pub fn enhance_change(&self, layout: &Layout, change: &Change, approach: Approach) -> ChangeOutcome {
        let outer = self.is_relevant(layout, change);
        let outcome = if outer { self.enhance_outer(layout, change) } else { self.enhance_inner(layout, change, approach) };
        ChangeOutcome { change: change.clone(), outer, outcome }
    }

    /// Outer changes left to right and top to bottom, then inner changes.
    pub fn enhance_all(&self, layout: &Layout, approach: Approach) -> (Layout, Vec<ChangeOutcome>) {
        let mut keyed: Vec<(bool, f64, f64, &Change)> = self
            .changes
            .iter()
            .map(|c| {
                let p = self.anchor(layout, c);
                (!self.is_relevant(layout, c), p.x, p.y, c)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.total_cmp(&b.2)).then(a.3.cmp(b.3)));
        let mut cur = layout.clone();
        let mut outcomes = Vec::with_capacity(keyed.len());
        for (_, _, _, c) in keyed {
            let o = self.enhance_change(&cur, c, approach);
            cur = o.outcome.layout.clone();
            outcomes.push(o);
        }
        (cur, outcomes)
    }

    pub fn run(&self, approach: Approach) -> Result<PipelineResult> {
        let increase = self.increase_outer_relevant(&self.initial);
        self.run_from(increase, approach)
    }

    /// Continues after a precomputed increase phase.
    pub fn run_from(&self, increase: EnhancementOutcome, approach: Approach) -> Result<PipelineResult> {
        let (layout, changes) = self.enhance_all(&increase.layout, approach);
        let (base, alternative) = self.views(&layout);
        let report = PipelineReport {
            approach,
            increase,
            changes,
            initial_aesthetics: self.baseline,
            final_aesthetics: self.scores(&layout),
        };
        Ok(PipelineResult { supergraph_layout: layout, base, alternative, report })
    }
}

pub fn run_pipeline(
    base: &DirectedGraph,
    alternative: &DirectedGraph,
    layout_cfg: &LayoutConfig,
    hull_cfg: &HullConfig,
    cfg: &EnhanceConfig,
) -> Result<PipelineResult> {
    Pipeline::new(base, alternative, layout_cfg, hull_cfg, cfg)?.run(cfg.inner_approach)
}

/// Initialization and restriction only: the unenhanced comparison.
pub fn run_base(base: &DirectedGraph, alternative: &DirectedGraph, layout_cfg: &LayoutConfig) -> Result<(Layout, Layout)> {
    let s = build_supergraph(base, alternative)?;
    let l = layout_supergraph(&s, layout_cfg)?;
    Ok((l.restrict(base)?, l.restrict(alternative)?))
}
