//! `schnyder`: generate triangulations, draw them, check the drawing's
//! properties and run greedy routing experiments.
//!
//! Exit codes: 0 success, 1 a check or delivery failure, 2 bad usage or input.

mod commands;
mod config;
mod files;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schnyder_core::routing::Strategy;
use schnyder_core::VertexId;

#[derive(Parser, Debug)]
#[command(
    name = "schnyder",
    version,
    about = "Schnyder drawings and greedy routing on planar triangulations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the report to this file
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a stacked triangulation, optionally randomised by edge flips
    Gen {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        flips: usize,
        /// Output .tri file (stdout if omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute the realizer; prints `v p1 p2 p3` per inner vertex
    Realize {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the saturated graph as .sat
        #[arg(long)]
        sat: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Write the exact .bary coordinates and an SVG picture
    Draw {
        input: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        bary: Option<PathBuf>,
        /// Side length of the outer triangle in SVG units
        #[arg(long, default_value_t = 600.0)]
        scale: f64,
        /// Draw every edge in one colour
        #[arg(long)]
        no_tree_colors: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Run every check on a triangulation, including all-pairs sector routing
    Verify {
        input: PathBuf,
        /// Directory for counterexample files
        #[arg(long, default_value = "counterexamples")]
        counterexamples: PathBuf,
        #[arg(long, hide = true, value_enum)]
        inject_fault: Option<Fault>,
        #[command(flatten)]
        out: Output,
    },
    /// Route one packet and print its trace
    Route {
        input: PathBuf,
        #[arg(long, value_parser = parse_vertex)]
        from: VertexId,
        #[arg(long, value_parser = parse_vertex)]
        to: VertexId,
        #[arg(long, default_value = "sector-greedy", value_parser = parse_strategy)]
        strategy: Strategy,
        /// Hop budget (defaults to n)
        #[arg(long)]
        max_hops: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Route between all ordered pairs of vertices
    Allpairs {
        input: PathBuf,
        #[arg(long, default_value = "sector-greedy", value_parser = parse_strategy)]
        strategy: Strategy,
        /// Directory for counterexample files (none written if omitted)
        #[arg(long)]
        counterexamples: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Compare routing strategies over generated instances or files
    Compare {
        /// Instance files; ignored when --seeds is given
        inputs: Vec<PathBuf>,
        /// Inclusive seed range `a..b`, or a single seed
        #[arg(long, value_parser = parse_seeds)]
        seeds: Option<(u64, u64)>,
        #[arg(short = 'n', default_value_t = 50)]
        n: usize,
        /// Flip attempts per generated instance (defaults to 10 n)
        #[arg(long)]
        flips: Option<usize>,
        #[arg(long, value_delimiter = ',', default_value = "sector-greedy,euclidean-greedy", value_parser = parse_strategy)]
        strategies: Vec<Strategy>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// swap the coordinates of vertices 3 and 4
    Drawing,
    /// point the first saturated edge of vertex 3 back at itself
    Saturated,
}

fn parse_vertex(s: &str) -> Result<VertexId, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse()
}

fn parse_seeds(s: &str) -> Result<(u64, u64), String> {
    let bad = || format!("expected `a..b` or a single seed, got {s:?}");
    match s.split_once("..") {
        Some((a, b)) => {
            let a: u64 = a.trim().parse().map_err(|_| bad())?;
            let b: u64 = b
                .trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
        None => s.trim().parse().map(|a| (a, a)).map_err(|_| bad()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
