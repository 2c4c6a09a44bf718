//! Command-line arguments, mapped onto [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{Command, InputFormat, OutputFormat, RunConfig, DEFAULT_OUT_DIR, OUT_DIR_ENV};

fn defaults() -> RunConfig {
    RunConfig::default()
}

#[derive(Debug, Parser)]
#[command(
    name = "ramstat",
    version,
    about = "Monochromatic triangle and clique statistics for threshold and partner graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,

    /// Directory for tables, plot data and the run manifest.
    #[arg(long, global = true, env = OUT_DIR_ENV, default_value = DEFAULT_OUT_DIR)]
    pub out_dir: PathBuf,

    /// Machine-readable table formats to write.
    #[arg(
        long = "format",
        global = true,
        value_enum,
        value_delimiter = ',',
        default_value = "csv,json"
    )]
    pub formats: Vec<OutputFormat>,

    /// Worker threads for the census kernels (default: all cores). Does not
    /// change any output.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Threshold sweep of a roll-call vote file.
    Sweep(VoteArgs),
    /// Chi-squared deviation tables for a vote sweep or a trade graph.
    Chi2(Chi2Args),
    /// Census and extremal structure of a top-k trade-partner graph.
    Trade(TradeArgs),
    /// Monte Carlo check of expected monochromatic triangle counts.
    Simulate(SimulateArgs),
    /// Goodman, Schwenk and Thomason tables.
    Bounds(BoundsArgs),
}

#[derive(Debug, Args)]
pub struct VoteArgs {
    #[arg(long)]
    pub input: PathBuf,

    #[arg(long, value_enum, default_value = "uci")]
    pub input_format: InputFormat,

    #[arg(long, default_value_t = defaults().t_min, conflicts_with = "t")]
    pub t_min: u32,

    /// Last threshold (default: vote count + 1).
    #[arg(long, conflicts_with = "t")]
    pub t_max: Option<u32>,

    /// Threshold range as two values, `--t MIN MAX`.
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"])]
    pub t: Option<Vec<u32>>,

    /// Comma-separated subgroups: G (everyone), D, R, or a party label.
    #[arg(long, value_delimiter = ',', default_value = "G,D,R")]
    pub subgroup: Vec<String>,
}

#[derive(Debug, Args)]
pub struct Chi2Args {
    #[command(flatten)]
    pub votes: VoteArgs,

    #[arg(long, default_value_t = defaults().df)]
    pub df: u32,

    #[arg(long, default_value_t = defaults().significance)]
    pub significance: f64,

    /// Trade partners per country (trade input only).
    #[arg(long, default_value_t = defaults().k)]
    pub k: usize,

    /// Clique orders for trade input.
    #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
    pub orders: Vec<u32>,
}

#[derive(Debug, Args)]
pub struct TradeArgs {
    #[arg(long)]
    pub input: PathBuf,

    #[arg(long, default_value_t = defaults().k)]
    pub k: usize,

    #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
    pub orders: Vec<u32>,

    /// Report the blue-neighborhood density of this country (repeatable).
    #[arg(long)]
    pub density_vertex: Vec<String>,

    /// Node budget for each maximum-clique search.
    #[arg(long, default_value_t = defaults().budget)]
    pub budget: u64,

    #[arg(long, default_value_t = defaults().df)]
    pub df: u32,

    #[arg(long, default_value_t = defaults().significance)]
    pub significance: f64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = defaults().n)]
    pub n: u64,

    #[arg(long, default_value_t = defaults().samples)]
    pub samples: u64,

    #[arg(long, default_value_t = defaults().seed)]
    pub seed: u64,

    /// Spacing of the edge-probability grid on [0, 1].
    #[arg(long, default_value_t = defaults().t_step)]
    pub t_step: f64,

    /// Also enumerate every coloring (n <= 7).
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, default_value_t = defaults().n_min)]
    pub n_min: u64,

    #[arg(long, default_value_t = defaults().n_max)]
    pub n_max: u64,

    /// Clique orders for the Thomason column (orders below 4 are skipped).
    #[arg(long, value_delimiter = ',', default_value = "3,4,5")]
    pub orders: Vec<u32>,
}

impl VoteArgs {
    fn apply(self, c: &mut RunConfig) {
        c.inputs = vec![self.input];
        c.input_format = self.input_format;
        match self.t.as_deref() {
            Some([lo, hi]) => {
                c.t_min = *lo;
                c.t_max = Some(*hi);
            }
            _ => {
                c.t_min = self.t_min;
                c.t_max = self.t_max;
            }
        }
        c.subgroups = self.subgroup;
    }
}

impl Cli {
    pub fn into_config(self) -> (RunConfig, Option<usize>) {
        let mut c = match self.command {
            Sub::Sweep(a) => {
                let mut c = RunConfig::new(Command::Sweep);
                a.apply(&mut c);
                c
            }
            Sub::Chi2(a) => {
                let mut c = RunConfig::new(Command::Chi2);
                a.votes.apply(&mut c);
                c.df = a.df;
                c.significance = a.significance;
                c.k = a.k;
                c.orders = a.orders;
                c
            }
            Sub::Trade(a) => {
                let mut c = RunConfig::new(Command::Trade);
                c.inputs = vec![a.input];
                c.k = a.k;
                c.orders = a.orders;
                c.density_vertices = a.density_vertex;
                c.budget = a.budget;
                c.df = a.df;
                c.significance = a.significance;
                c
            }
            Sub::Simulate(a) => {
                let mut c = RunConfig::new(Command::Simulate);
                c.n = a.n;
                c.samples = a.samples;
                c.seed = a.seed;
                c.t_step = a.t_step;
                c.exhaustive = a.exhaustive;
                c
            }
            Sub::Bounds(a) => {
                let mut c = RunConfig::new(Command::Bounds);
                c.n_min = a.n_min;
                c.n_max = a.n_max;
                c.orders = a.orders;
                c
            }
        };
        c.out_dir = self.out_dir;
        let mut formats = self.formats;
        formats.sort();
        formats.dedup();
        c.formats = formats;
        (c, self.threads)
    }
}
