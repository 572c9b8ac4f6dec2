//! The run configuration echoed into every JSON report.

use serde::Serialize;

use crate::{Fault, Format};
use schnyder_core::routing::Strategy;

/// Every flag that can influence a run. Unused fields stay `null` so the
/// schema is the same for all subcommands.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub subcommand: &'static str,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub seeds: Option<[u64; 2]>,
    pub flips: Option<usize>,
    pub strategies: Vec<Strategy>,
    pub max_hops: Option<usize>,
    pub from: Option<String>,
    pub to: Option<String>,
    pub format: Format,
    pub svg_scale: Option<f64>,
    pub tree_colors: Option<bool>,
    pub inject_fault: Option<Fault>,
}

impl RunConfig {
    pub fn new(subcommand: &'static str, format: Format) -> Self {
        RunConfig {
            subcommand,
            inputs: Vec::new(),
            outputs: Vec::new(),
            n: None,
            seed: None,
            seeds: None,
            flips: None,
            strategies: Vec::new(),
            max_hops: None,
            from: None,
            to: None,
            format,
            svg_scale: None,
            tree_colors: None,
            inject_fault: None,
        }
    }
}
