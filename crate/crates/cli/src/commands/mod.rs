pub mod bounds;
pub mod chi2;
pub mod simulate;
pub mod sweep;
pub mod trade;

use std::path::Path;

use ramstat_core::ingest::{hamming_matrix, parse_trade_flows, parse_votes, party_members};
use ramstat_core::{DistanceMatrix, Party, TradeFlow, VoteFormat, VoterRecord};

use crate::config::{Command, InputFormat, RunConfig};
use crate::error::{CliError, CliResult, EXIT_OK};
use crate::output::Outputs;

/// What a command printed and the exit code it asks for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit: i32,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            exit: EXIT_OK,
        }
    }
}

/// Runs the configured command, writing every output and the manifest.
pub fn run(config: &RunConfig) -> CliResult<Outcome> {
    let mut out = Outputs::new(&config.out_dir)?;
    let outcome = match config.command {
        Command::Sweep => sweep::run(config, &mut out)?,
        Command::Chi2 => chi2::run(config, &mut out)?,
        Command::Trade => trade::run(config, &mut out)?,
        Command::Simulate => simulate::run(config, &mut out)?,
        Command::Bounds => bounds::run(config, &mut out)?,
    };
    out.finish(config)?;
    Ok(outcome)
}

fn single_input(config: &RunConfig) -> CliResult<&Path> {
    match config.inputs.as_slice() {
        [one] => Ok(one),
        [] => Err(CliError::usage(format!(
            "{} needs --input",
            config.command.name()
        ))),
        _ => Err(CliError::usage(format!(
            "{} takes one --input",
            config.command.name()
        ))),
    }
}

pub(crate) struct Votes {
    pub records: Vec<VoterRecord>,
    pub distances: DistanceMatrix,
    pub vote_len: u32,
}

pub(crate) fn load_votes(config: &RunConfig, out: &mut Outputs) -> CliResult<Votes> {
    let path = single_input(config)?;
    let format = match config.input_format {
        InputFormat::Uci => VoteFormat::UciHouseVotes84,
        InputFormat::Csv => VoteFormat::GenericCsv,
        InputFormat::Trade => {
            return Err(CliError::usage(format!(
                "{} reads vote records, not trade flows",
                config.command.name()
            )))
        }
    };
    let bytes = out.read_input(path)?;
    let records = parse_votes(bytes.as_slice(), format).map_err(|e| CliError::parse(path, e))?;
    if records.is_empty() {
        return Err(CliError::parse(
            path,
            ramstat_core::Error::Parse {
                line: 1,
                message: "no voter records".into(),
            },
        ));
    }
    let distances = hamming_matrix(&records).map_err(|e| CliError::parse(path, e))?;
    let vote_len = records[0].votes.chars().count() as u32;
    Ok(Votes {
        records,
        distances,
        vote_len,
    })
}

pub(crate) fn load_flows(config: &RunConfig, out: &mut Outputs) -> CliResult<Vec<TradeFlow>> {
    let path = single_input(config)?;
    let bytes = out.read_input(path)?;
    parse_trade_flows(bytes.as_slice()).map_err(|e| CliError::parse(path, e))
}

/// Members of a named subgroup; `None` means everyone.
pub(crate) fn subgroup(records: &[VoterRecord], name: &str) -> CliResult<Option<Vec<usize>>> {
    let party = match name {
        "G" | "g" | "all" => return Ok(None),
        "D" | "d" => Party::Democrat,
        "R" | "r" => Party::Republican,
        other => Party::Other(other.to_string()),
    };
    let members = party_members(records, &party);
    if members.is_empty() {
        return Err(CliError::usage(format!("subgroup {name} has no members")));
    }
    Ok(Some(members))
}

/// File-name-safe form of a subgroup label.
pub(crate) fn slug(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}
