use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context};
use dagshape_core::enhance::Direction;
use dagshape_core::graph::GraphDocument;
use dagshape_core::layout::LayoutDocument;
use dagshape_core::{
    concave_hull, evaluate as run_evaluation, layout_graph, render_svg, DirectedGraph, Error, Highlight, Layout,
    Membership, Overlay, Pipeline, ViewBox,
};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::config::RunConfig;

/// Exit code 2 for bad input, 1 for anything that fails afterwards.
#[derive(Debug)]
pub enum Failure {
    Input(anyhow::Error),
    Runtime(anyhow::Error),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Runtime(_) => 1,
        }
    }

    pub fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Input(e) | Failure::Runtime(e) => e,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidGraph(_) | Error::CyclicUnion(_) | Error::Config(_) | Error::InfeasibleParameters(_) => {
                Failure::Input(e.into())
            }
            _ => Failure::Runtime(e.into()),
        }
    }
}

fn runtime(e: anyhow::Error) -> Failure {
    Failure::Runtime(e)
}

/// Byte offset of a 1-based line/column position.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    before + column.saturating_sub(1)
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(Failure::Input)?;
    serde_json::from_str(&text).map_err(|e| {
        let at = byte_offset(&text, e.line(), e.column());
        Failure::Input(anyhow!("malformed JSON in {} at byte {at}: {e}", path.display()))
    })
}

fn read_graph(path: &Path) -> Result<DirectedGraph, Failure> {
    let g = DirectedGraph::from(read_json::<GraphDocument>(path)?);
    g.ensure_valid().map_err(|e| Failure::Input(anyhow!("{}: {e}", path.display())))?;
    Ok(g)
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<(), Failure> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display())).map_err(runtime)?;
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display())).map_err(runtime)
}

fn write_json(dir: &Path, name: &str, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| runtime(e.into()))?;
    write(dir, name, &(text + "\n"))
}

fn echo_config(cfg: &RunConfig) -> Result<(), Failure> {
    write(&cfg.out, "config.toml", &cfg.to_toml())
}

fn hull_overlay(layout: &Layout, cfg: &RunConfig) -> Result<Overlay, Failure> {
    let mut o = Overlay::default();
    if cfg.overlay_hull {
        o.hull = Some(concave_hull(layout, &cfg.hull())?.vertices);
    }
    Ok(o)
}

fn draw_single(layout: &Layout, cfg: &RunConfig, stem: &str) -> Result<(), Failure> {
    let overlay = hull_overlay(layout, cfg)?;
    let view = ViewBox::covering([(layout, &overlay)]);
    write(&cfg.out, &format!("{stem}.svg"), &render_svg(layout, &Highlight::default(), &overlay, view))
}

pub fn layout(graph: &Path, cfg: &RunConfig) -> Result<(), Failure> {
    let g = read_graph(graph)?;
    let l = layout_graph(&g, &cfg.layout())?;
    echo_config(cfg)?;
    write_json(&cfg.out, "layout.json", &l.to_document())?;
    draw_single(&l, cfg, "layout")
}

pub fn render(path: &Path, cfg: &RunConfig) -> Result<(), Failure> {
    let doc: LayoutDocument = read_json(path)?;
    let l = Layout::try_from(doc).map_err(|e| Failure::Input(anyhow!("{}: {e}", path.display())))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("layout");
    echo_config(cfg)?;
    draw_single(&l, cfg, stem)
}

pub fn compare(base: &Path, alternative: &Path, cfg: &RunConfig) -> Result<(), Failure> {
    let (b, a) = (read_graph(base)?, read_graph(alternative)?);
    let p = Pipeline::new(&b, &a, &cfg.layout(), &cfg.hull(), &cfg.enhance())?;
    let result = p.run(cfg.inner_approach)?;

    let mut overlays = [hull_overlay(&result.base, cfg)?, hull_overlay(&result.alternative, cfg)?];
    if cfg.overlay_circles {
        for c in result.report.changes.iter().filter(|c| !c.outer) {
            let slot = match c.change.direction {
                Direction::Removed => 0,
                Direction::Added => 1,
            };
            overlays[slot].circles.extend(p.white_space_circles(&result.supergraph_layout, &c.change));
        }
    }
    let highlight = |keep: Membership| Highlight {
        nodes: p.supergraph.node_membership.iter().filter(|(_, m)| **m == keep).map(|(n, _)| n.clone()).collect(),
        edges: p.supergraph.edge_membership.iter().filter(|(_, m)| **m == keep).map(|(e, _)| e.clone()).collect(),
    };
    let view = ViewBox::covering([(&result.base, &overlays[0]), (&result.alternative, &overlays[1])]);

    echo_config(cfg)?;
    let out = &cfg.out;
    write(out, "base.svg", &render_svg(&result.base, &highlight(Membership::BaseOnly), &overlays[0], view))?;
    write(
        out,
        "alternative.svg",
        &render_svg(&result.alternative, &highlight(Membership::AlternativeOnly), &overlays[1], view),
    )?;
    write_json(out, "base.layout.json", &result.base.to_document())?;
    write_json(out, "alternative.layout.json", &result.alternative.to_document())?;
    write_json(out, "report.json", &result.report)?;
    write_json(out, "overlays.json", &serde_json::json!({ "base": overlays[0], "alternative": overlays[1] }))
}

pub fn evaluate(cfg: &RunConfig) -> Result<(), Failure> {
    let report = run_evaluation(&cfg.eval())?;
    echo_config(cfg)?;
    report.write(&cfg.out).map_err(|e| runtime(e.into()))?;
    for s in &report.sections {
        let approach = s.approach.map_or("-".to_string(), |a| a.to_string());
        let g = &s.equal_weighted;
        let ratio = g.ratio.map_or("n/a".to_string(), |r| format!("{r:.3}"));
        println!("{:?} {approach}: ratio {ratio}, enhanced better {:.3}, base better {:.3}", s.family, g.enh_better, g.base_better);
    }
    if !report.failures.is_empty() {
        eprintln!("{} pairs failed; see summary.json", report.failures.len());
    }
    Ok(())
}
