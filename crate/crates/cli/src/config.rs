//! Run configuration shared by every command. It is recorded verbatim in the
//! run manifest and can be read back from it.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

pub const DEFAULT_OUT_DIR: &str = "ramstat-out";
pub const OUT_DIR_ENV: &str = "RAMSTAT_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Sweep,
    Chi2,
    Trade,
    Simulate,
    Bounds,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Sweep => "sweep",
            Command::Chi2 => "chi2",
            Command::Trade => "trade",
            Command::Simulate => "simulate",
            Command::Bounds => "bounds",
        }
    }
}

/// How the `--input` file is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum InputFormat {
    /// UCI house-votes-84 rows: party, then sixteen `y`/`n`/`?` tokens.
    Uci,
    /// Headed vote CSV with a `party` column.
    Csv,
    /// Headed `exporter,importer,volume` flow CSV.
    Trade,
}

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub command: Command,
    pub inputs: Vec<PathBuf>,
    /// `uci` unless the command is `trade`.
    pub input_format: InputFormat,
    pub t_min: u32,
    /// Defaults to the vote count plus one, the first all-red threshold.
    pub t_max: Option<u32>,
    /// `G` for everyone, `D`/`R` for the parties, or any other party label.
    pub subgroups: Vec<String>,
    pub orders: Vec<u32>,
    pub df: u32,
    /// Trade partners per country and direction.
    pub k: usize,
    pub seed: u64,
    pub samples: u64,
    /// Vertex count for `simulate`.
    pub n: u64,
    /// Probability grid step for `simulate`.
    pub t_step: f64,
    pub exhaustive: bool,
    pub n_min: u64,
    pub n_max: u64,
    pub significance: f64,
    pub density_vertices: Vec<String>,
    pub budget: u64,
    pub out_dir: PathBuf,
    pub formats: Vec<OutputFormat>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::Sweep,
            inputs: Vec::new(),
            input_format: InputFormat::Uci,
            t_min: 0,
            t_max: None,
            subgroups: vec!["G".into(), "D".into(), "R".into()],
            orders: vec![3, 4, 5],
            df: ramstat_core::stats::DEFAULT_DF,
            k: 5,
            seed: 0,
            samples: 2_000,
            n: 20,
            t_step: 0.05,
            exhaustive: false,
            n_min: 3,
            n_max: 20,
            significance: 0.01,
            density_vertices: Vec::new(),
            budget: ramstat_core::census::DEFAULT_NODE_BUDGET,
            out_dir: PathBuf::from(DEFAULT_OUT_DIR),
            formats: vec![OutputFormat::Csv, OutputFormat::Json],
        }
    }
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        let mut c = RunConfig {
            command,
            ..RunConfig::default()
        };
        if command == Command::Trade {
            c.input_format = InputFormat::Trade;
        }
        c
    }

    pub fn wants(&self, format: OutputFormat) -> bool {
        self.formats.contains(&format)
    }
}
