//! Flat run configuration read from a TOML file.

use std::path::PathBuf;

use anyhow::{Context, Result};
use dagshape_core::{AestheticWeights, Approach, ChangeType, EnhanceConfig, EvalConfig, HullConfig, LayoutConfig};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub horizontal_spacing: f64,
    pub vertical_spacing: f64,
    pub barycenter_sweeps: usize,
    pub weight_crossings: f64,
    pub weight_angular_resolution: f64,
    pub weight_edge_bends: f64,
    pub weight_edge_length_uniformity: f64,
    pub weight_symmetry: f64,

    pub ray_spacing: f64,
    pub concavity: f64,
    pub enclosure: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_sample_count: Option<usize>,

    pub outer_adaption: f64,
    pub inner_adaption: f64,
    pub hausdorff_threshold: f64,
    pub whitespace_threshold: f64,
    pub aesthetics_tolerance: f64,
    pub max_iterations: usize,
    pub inner_approach: Approach,

    pub seed: u64,
    pub count: usize,
    pub nodes: usize,
    pub edges: usize,
    pub multi_cap: usize,
    pub change_types: Vec<ChangeType>,
    pub approaches: Vec<Approach>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,

    pub out: PathBuf,
    pub overlay_hull: bool,
    pub overlay_circles: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let layout = LayoutConfig::default();
        let hull = HullConfig::default();
        let enhance = EnhanceConfig::default();
        let eval = EvalConfig::default();
        let w = layout.weights;
        Self {
            horizontal_spacing: layout.horizontal_spacing,
            vertical_spacing: layout.vertical_spacing,
            barycenter_sweeps: layout.barycenter_sweeps,
            weight_crossings: w.crossings,
            weight_angular_resolution: w.angular_resolution,
            weight_edge_bends: w.edge_bends,
            weight_edge_length_uniformity: w.edge_length_uniformity,
            weight_symmetry: w.symmetry,
            ray_spacing: hull.ray_spacing,
            concavity: hull.concavity,
            enclosure: hull.enclosure,
            edge_sample_count: hull.edge_sample_count,
            outer_adaption: enhance.outer_adaption,
            inner_adaption: enhance.inner_adaption,
            hausdorff_threshold: enhance.hausdorff_threshold,
            whitespace_threshold: enhance.whitespace_threshold,
            aesthetics_tolerance: enhance.aesthetics_tolerance,
            max_iterations: enhance.max_iterations,
            inner_approach: enhance.inner_approach,
            seed: eval.seed,
            count: eval.count,
            nodes: eval.nodes,
            edges: eval.edges,
            multi_cap: eval.multi_cap,
            change_types: eval.change_types,
            approaches: eval.approaches,
            workers: eval.workers,
            out: PathBuf::from("out"),
            overlay_hull: false,
            overlay_circles: false,
        }
    }
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn layout(&self) -> LayoutConfig {
        LayoutConfig {
            horizontal_spacing: self.horizontal_spacing,
            vertical_spacing: self.vertical_spacing,
            barycenter_sweeps: self.barycenter_sweeps,
            weights: AestheticWeights {
                crossings: self.weight_crossings,
                angular_resolution: self.weight_angular_resolution,
                edge_bends: self.weight_edge_bends,
                edge_length_uniformity: self.weight_edge_length_uniformity,
                symmetry: self.weight_symmetry,
            },
        }
    }

    pub fn hull(&self) -> HullConfig {
        HullConfig {
            ray_spacing: self.ray_spacing,
            concavity: self.concavity,
            enclosure: self.enclosure,
            edge_sample_count: self.edge_sample_count,
            horizontal_spacing: self.horizontal_spacing,
        }
    }

    pub fn enhance(&self) -> EnhanceConfig {
        EnhanceConfig {
            outer_adaption: self.outer_adaption,
            inner_adaption: self.inner_adaption,
            hausdorff_threshold: self.hausdorff_threshold,
            whitespace_threshold: self.whitespace_threshold,
            aesthetics_tolerance: self.aesthetics_tolerance,
            max_iterations: self.max_iterations,
            inner_approach: self.inner_approach,
        }
    }

    pub fn eval(&self) -> EvalConfig {
        EvalConfig {
            count: self.count,
            nodes: self.nodes,
            edges: self.edges,
            seed: self.seed,
            multi_cap: self.multi_cap,
            change_types: self.change_types.clone(),
            approaches: self.approaches.clone(),
            layout: self.layout(),
            hull: self.hull(),
            enhance: self.enhance(),
            workers: self.workers,
        }
    }

    pub fn validate(&self) -> dagshape_core::Result<()> {
        self.layout().validate()?;
        self.hull().validate()?;
        self.enhance().validate()?;
        if self.workers == Some(0) {
            return Err(dagshape_core::Error::Config("workers must be at least 1".into()));
        }
        Ok(())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_the_reference_values() {
        let c = RunConfig::default();
        let got = [
            c.horizontal_spacing,
            c.vertical_spacing,
            c.ray_spacing,
            c.concavity,
            c.enclosure,
            c.hausdorff_threshold,
            c.whitespace_threshold,
            c.aesthetics_tolerance,
            c.max_iterations as f64,
            c.inner_adaption,
        ];
        assert_eq!(got, [80.0, 200.0, 20.0, 0.8, 0.1, 0.15, 0.05, 0.1, 10.0, 160.0]);
    }

    #[test]
    fn echo_round_trips() {
        let c = RunConfig { workers: Some(2), edge_sample_count: Some(5), ..RunConfig::default() };
        let back: RunConfig = toml::from_str(&c.to_toml()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<RunConfig>("horizontal_spacng = 3.0").is_err());
    }

    #[test]
    fn partial_file_keeps_defaults() {
        let c: RunConfig = toml::from_str("seed = 7\ninner_approach = \"ws1\"").unwrap();
        assert_eq!((c.seed, c.inner_approach, c.vertical_spacing), (7, Approach::Ws1, 200.0));
    }
}
