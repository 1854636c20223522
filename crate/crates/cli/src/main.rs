mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dagshape_core::Approach;

use crate::commands::Failure;
use crate::config::RunConfig;

/// Comparative layouts for pairs of directed acyclic graphs.
#[derive(Debug, Parser)]
#[command(name = "dagshape", version)]
struct Cli {
    /// Flat TOML configuration; missing keys take their defaults.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Inner white-space approach. For `evaluate`, restricts the run to it.
    #[arg(long, global = true, value_enum)]
    approach: Option<ApproachArg>,
    /// Overlays to draw, comma separated.
    #[arg(long, global = true, value_enum, value_delimiter = ',')]
    overlay: Vec<OverlayArg>,
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lay out one graph and draw it.
    Layout { graph: PathBuf },
    /// Enhance a base/alternative pair and draw both in one frame.
    Compare { base: PathBuf, alternative: PathBuf },
    /// Run the random-corpus evaluation and write the metric tables.
    Evaluate,
    /// Draw a saved layout.
    Render { layout: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ApproachArg {
    Ws1,
    Ws2,
    Ws3,
    Ws4,
}

impl From<ApproachArg> for Approach {
    fn from(a: ApproachArg) -> Self {
        match a {
            ApproachArg::Ws1 => Approach::Ws1,
            ApproachArg::Ws2 => Approach::Ws2,
            ApproachArg::Ws3 => Approach::Ws3,
            ApproachArg::Ws4 => Approach::Ws4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OverlayArg {
    Hull,
    Circles,
}

fn resolve(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p).map_err(Failure::Input)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(o) = &cli.out {
        cfg.out = o.clone();
    }
    if let Some(a) = cli.approach {
        cfg.inner_approach = a.into();
        cfg.approaches = vec![a.into()];
    }
    if cli.overlay.contains(&OverlayArg::Hull) {
        cfg.overlay_hull = true;
    }
    if cli.overlay.contains(&OverlayArg::Circles) {
        cfg.overlay_circles = true;
    }
    if cli.workers.is_some() {
        cfg.workers = cli.workers;
    }
    cfg.validate().map_err(|e| Failure::Input(e.into()))?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = resolve(&cli)?;
    match &cli.command {
        Command::Layout { graph } => commands::layout(graph, &cfg),
        Command::Compare { base, alternative } => commands::compare(base, alternative, &cfg),
        Command::Evaluate => commands::evaluate(&cfg),
        Command::Render { layout } => commands::render(layout, &cfg),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error());
            ExitCode::from(f.code())
        }
    }
}
