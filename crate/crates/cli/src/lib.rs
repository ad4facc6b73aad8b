//! `nucleus` command implementations. `main.rs` only parses and reports.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use nucleus_core::analysis::{degree_levels, ConvergenceTrace};
use nucleus_core::local::{and_observed, estimate_ego, snd_observed};
use nucleus_core::report::{
    clique_label, write_estimates_csv, write_kappa_csv, write_levels_csv, write_summary_json,
    EstimateRow, RunSummary,
};
use nucleus_core::{
    load_edge_list, peel, CliqueSet, Decomposition, EngineOptions, Graph, LoadOptions, LoadStats,
    Order,
};

#[derive(Debug, Parser)]
#[command(name = "nucleus", version, about = "Core, truss and (3,4)-nucleus decompositions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute κ for every r-clique and write CSV + JSON summary.
    Decompose(DecomposeArgs),
    /// Ego-network estimates for selected vertices, edges or triangles.
    Estimate(EstimateArgs),
    /// Count degree levels and print their size histogram.
    Levels(LevelsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecompArg {
    Core,
    Truss,
    Nucleus34,
}

impl From<DecompArg> for Decomposition {
    fn from(d: DecompArg) -> Self {
        match d {
            DecompArg::Core => Decomposition::Core,
            DecompArg::Truss => Decomposition::Truss,
            DecompArg::Nucleus34 => Decomposition::Nucleus34,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Peel,
    Snd,
    And,
    AndNonotify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Natural,
    Random,
    Levels,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Whitespace-separated edge list; `#` starts a comment line.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "core")]
    pub decomp: DecompArg,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "peel")]
    pub engine: EngineArg,
    /// Worker threads (local engines only).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Processing order (and, and-nonotify).
    #[arg(long, value_enum)]
    pub order: Option<OrderArg>,
    /// Shuffle seed for `--order random`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Stop after this many passes.
    #[arg(long = "max-iters")]
    pub max_iters: Option<usize>,
    /// Stop once a pass recomputes less than this fraction of cliques (and).
    #[arg(long = "stop-active-ratio")]
    pub stop_active_ratio: Option<f64>,
    /// Also write PREFIX.trace.csv, comparing every pass with peeling.
    #[arg(long)]
    pub trace: bool,
    /// Output prefix: PREFIX.kappa.csv, PREFIX.summary.json.
    #[arg(long, default_value = "nucleus")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Anchor as vertex labels: `7` (core), `7,9` (truss), `7,9,12` (nucleus34).
    #[arg(long = "anchor")]
    pub anchors: Vec<String>,
    /// File with one anchor per line.
    #[arg(long = "anchors-file")]
    pub anchors_file: Option<PathBuf>,
    /// Also report the exact value from peeling.
    #[arg(long)]
    pub exact: bool,
    /// Write PREFIX.estimates.csv instead of printing to stdout.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct LevelsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Write PREFIX.levels.csv instead of printing the histogram.
    #[arg(long)]
    pub out: Option<String>,
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Decompose(args) => decompose(&args),
        Command::Estimate(args) => estimate(&args),
        Command::Levels(args) => levels(&args),
    }
}

fn load(path: &Path) -> Result<(Graph, LoadStats)> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    load_edge_list(BufReader::new(file), &LoadOptions::default())
        .with_context(|| format!("cannot read {}", path.display()))
}

fn create(path: &str) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("cannot create {path}"))?,
    ))
}

/// Engine options from the flags, rejecting combinations the chosen engine
/// would ignore.
pub fn engine_options(args: &DecomposeArgs) -> Result<EngineOptions> {
    let engine = args.engine;
    let local = engine != EngineArg::Peel;
    let asynchronous = matches!(engine, EngineArg::And | EngineArg::AndNonotify);
    if !local {
        for (set, flag) in [
            (args.threads.is_some(), "--threads"),
            (args.max_iters.is_some(), "--max-iters"),
            (args.trace, "--trace"),
        ] {
            if set {
                bail!("{flag} does not apply to the peel engine");
            }
        }
    }
    if !asynchronous && args.order.is_some() {
        bail!("--order applies only to the and and and-nonotify engines");
    }
    if args.seed.is_some() && args.order != Some(OrderArg::Random) {
        bail!("--seed requires --order random");
    }
    if args.stop_active_ratio.is_some() && engine != EngineArg::And {
        bail!("--stop-active-ratio applies only to the and engine");
    }
    let order = match args.order.unwrap_or(OrderArg::Natural) {
        OrderArg::Natural => Order::Natural,
        OrderArg::Random => Order::Random(args.seed.unwrap_or(0)),
        OrderArg::Levels => Order::DegreeLevels,
    };
    let opts = EngineOptions {
        threads: args.threads.unwrap_or(1),
        max_iterations: args.max_iters,
        stop_active_ratio: args.stop_active_ratio,
        order,
        notify: engine != EngineArg::AndNonotify,
        ..EngineOptions::default()
    };
    opts.validate()?;
    Ok(opts)
}

fn decompose(args: &DecomposeArgs) -> Result<()> {
    let opts = engine_options(args)?;
    let started = Instant::now();
    let (graph, load_stats) = load(&args.input.input)?;
    let cs = CliqueSet::new(&graph, args.input.decomp.into());
    let setup_secs = started.elapsed().as_secs_f64();

    let reference = if args.trace { Some(peel(&cs)) } else { None };
    let mut trace = ConvergenceTrace::new();
    let mut trace_error = None;
    let mut observer = |stats: &nucleus_core::IterationStats, tau: &[u32]| {
        if let Some(exact) = &reference {
            if let Err(e) = trace.record(stats.iteration, stats.active_ratio, tau, exact) {
                trace_error.get_or_insert(e);
            }
        }
    };

    let engine_name = args.engine.to_possible_value().map(|v| v.get_name().to_string());
    let (kappa, iterations, passes, converged, stats, engine_options) = match args.engine {
        EngineArg::Peel => (peel(&cs), 0, 0, true, Vec::new(), None),
        EngineArg::Snd => {
            let r = snd_observed(&cs, &opts, &mut observer)?;
            (r.kappa, r.iterations, r.passes, r.converged, r.stats, Some(r.engine))
        }
        EngineArg::And | EngineArg::AndNonotify => {
            let r = and_observed(&cs, &opts, &mut observer)?;
            (r.kappa, r.iterations, r.passes, r.converged, r.stats, Some(r.engine))
        }
    };
    if let Some(e) = trace_error {
        return Err(e.into());
    }
    let wall_secs = started.elapsed().as_secs_f64();

    let kappa_path = format!("{}.kappa.csv", args.out);
    let mut w = create(&kappa_path)?;
    write_kappa_csv(&cs, &kappa, &mut w)?;
    w.flush()?;

    let summary = RunSummary {
        input: args.input.input.display().to_string(),
        decomposition: cs.decomposition(),
        engine: engine_name.unwrap_or_default(),
        engine_options,
        load: Some(load_stats),
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        r_cliques: cs.len(),
        s_cliques: cs.s_clique_count(),
        iterations,
        passes,
        converged,
        stats,
        setup_secs,
        wall_secs,
    };
    let mut w = create(&format!("{}.summary.json", args.out))?;
    write_summary_json(&summary, &mut w)?;
    w.flush()?;

    if args.trace {
        let mut w = create(&format!("{}.trace.csv", args.out))?;
        trace.write_csv(&mut w)?;
        w.flush()?;
    }
    if !converged {
        eprintln!("note: stopped before convergence; κ values are upper bounds");
    }
    eprintln!(
        "{} {}-cliques, {} iterations, {:.3}s -> {kappa_path}",
        cs.len(),
        cs.r(),
        iterations,
        wall_secs
    );
    Ok(())
}

fn read_anchors(args: &EstimateArgs) -> Result<Vec<String>> {
    let mut anchors = args.anchors.clone();
    if let Some(path) = &args.anchors_file {
        let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
        for line in BufReader::new(file).lines() {
            let line = line?;
            let line = line.trim();
            if !line.is_empty() && !line.starts_with('#') {
                anchors.push(line.to_string());
            }
        }
    }
    if anchors.is_empty() {
        bail!("no anchors given; use --anchor or --anchors-file");
    }
    Ok(anchors)
}

/// Resolves `"7,9"`-style labels (commas, dashes or spaces) to a clique id.
fn resolve_anchor(cs: &CliqueSet<'_>, anchor: &str) -> std::result::Result<u32, String> {
    let graph = cs.graph();
    let mut vertices = Vec::new();
    for tok in anchor.split([',', '-', ' ', '\t']).filter(|t| !t.is_empty()) {
        let label: u64 = tok.parse().map_err(|_| format!("invalid vertex label {tok:?}"))?;
        vertices.push(
            graph
                .vertex_by_label(label)
                .ok_or_else(|| format!("unknown vertex {label}"))?,
        );
    }
    if vertices.len() != cs.r() {
        return Err(format!(
            "expected {} vertex label(s) for {}, got {}",
            cs.r(),
            cs.decomposition().name(),
            vertices.len()
        ));
    }
    cs.clique_of(&vertices)
        .ok_or_else(|| format!("{anchor} is not a {}-clique of the graph", cs.r()))
}

fn estimate(args: &EstimateArgs) -> Result<()> {
    let anchors = read_anchors(args)?;
    let (graph, _) = load(&args.input.input)?;
    let cs = CliqueSet::new(&graph, args.input.decomp.into());
    let exact = if args.exact { Some(peel(&cs)) } else { None };

    let rows: Vec<EstimateRow> = anchors
        .iter()
        .map(|anchor| match resolve_anchor(&cs, anchor) {
            Ok(id) => match estimate_ego(&cs, id) {
                Ok(est) => EstimateRow {
                    anchor: clique_label(&cs, id),
                    estimate: Some(est),
                    exact: exact.as_ref().map(|k| k[id as usize]),
                    error: None,
                },
                Err(e) => failed(anchor, e.to_string()),
            },
            Err(e) => failed(anchor, e),
        })
        .collect();

    match &args.out {
        Some(prefix) => {
            let mut w = create(&format!("{prefix}.estimates.csv"))?;
            write_estimates_csv(&rows, &mut w)?;
            w.flush()?;
        }
        None => write_estimates_csv(&rows, io::stdout().lock())?,
    }
    let failures = rows.iter().filter(|r| r.error.is_some()).count();
    if failures == rows.len() {
        bail!("no anchor could be estimated");
    }
    if failures > 0 {
        eprintln!("warning: {failures} of {} anchors failed", rows.len());
    }
    Ok(())
}

fn failed(anchor: &str, error: String) -> EstimateRow {
    EstimateRow {
        anchor: anchor.to_string(),
        estimate: None,
        exact: None,
        error: Some(error),
    }
}

fn levels(args: &LevelsArgs) -> Result<()> {
    let (graph, _) = load(&args.input.input)?;
    let cs = CliqueSet::new(&graph, args.input.decomp.into());
    let levels = degree_levels(&cs);
    match &args.out {
        Some(prefix) => {
            let mut w = create(&format!("{prefix}.levels.csv"))?;
            write_levels_csv(&levels, &mut w)?;
            w.flush()?;
            println!("{} levels", levels.len());
        }
        None => {
            let mut out = io::stdout().lock();
            writeln!(out, "{} levels", levels.len())?;
            write_levels_csv(&levels, &mut out)?;
        }
    }
    Ok(())
}
