mod bench;
mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use planar_cut::error::FormatError;

#[derive(Parser, Debug)]
#[command(name = "planarcut", version, about = "Planar min-cut / max-flow toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Write a generated instance in .pg format.
    Generate {
        #[command(subcommand)]
        kind: GenKind,
        /// `unit` or `uniform:LO:HI`
        #[arg(long, default_value = "unit", global = true)]
        caps: String,
        #[arg(long, default_value_t = 0, global = true)]
        seed: u64,
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
    },
    /// Minimum s-t cut value.
    Mincut {
        graph: PathBuf,
        s: usize,
        t: usize,
        #[arg(long, value_enum, default_value_t = CutMode::Fast)]
        mode: CutMode,
        #[arg(long)]
        r: Option<usize>,
        /// Also print the cut edges.
        #[arg(long)]
        certificate: bool,
    },
    /// Maximum s-t flow with per-edge flows.
    Maxflow {
        graph: PathBuf,
        s: usize,
        t: usize,
        #[arg(long, value_enum, default_value_t = FlowMode::Layered)]
        mode: FlowMode,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Shortest path distance with capacities as lengths.
    Sp {
        graph: PathBuf,
        x: usize,
        y: usize,
        #[arg(long, value_enum, default_value_t = SpMode::Dynamic)]
        mode: SpMode,
        #[arg(long)]
        r: Option<usize>,
        /// Also print the path's vertices.
        #[arg(long)]
        certificate: bool,
    },
    /// Run every mode and check that they agree.
    Verify {
        graph: Option<PathBuf>,
        s: Option<usize>,
        t: Option<usize>,
        /// Flow file (as printed by `maxflow`) to check for feasibility.
        #[arg(long)]
        flow: Option<PathBuf>,
        /// Check this many random instances instead of a file.
        #[arg(long)]
        sweep: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_ddg_fault: bool,
    },
    /// Time min-cut modes on grids; CSV to stdout or `--out`.
    Bench {
        /// log2 of the vertex count, comma separated
        #[arg(long, default_value = "10,11,12,13,14")]
        sizes: String,
        #[arg(long, default_value = "64")]
        r: String,
        #[arg(long, default_value = "reif,fast")]
        modes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Replay an .ops script against a graph.
    Replay {
        graph: PathBuf,
        script: PathBuf,
        #[arg(long)]
        r: Option<usize>,
    },
}

#[derive(Subcommand, Debug, Clone)]
enum GenKind {
    Grid { w: usize, h: usize },
    Maximal { n: usize },
    Wheel { n: usize },
    /// Maximal planar graph with a fraction of edges dropped (kept connected).
    Random {
        n: usize,
        #[arg(default_value_t = 0.3)]
        drop: f64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum CutMode {
    Oracle,
    Reif,
    Fast,
    General,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FlowMode {
    Oracle,
    Exact,
    Layered,
    Accelerated,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SpMode {
    Oracle,
    Dynamic,
}

/// Disagreement between modes.
#[derive(Debug)]
struct Mismatch(String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Mismatch>().is_some() {
        3
    } else if matches!(err.downcast_ref::<FormatError>(), Some(FormatError::Parse { .. } | FormatError::Graph(_))) {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let mut out = std::io::stdout().lock();
    match commands::dispatch(cli.cmd, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
