use std::fmt::Write as _;

use serde::Serialize;

use ramstat_core::ingest::sweep;
use ramstat_core::report::{self, Column};
use ramstat_core::SweepTable;

use super::{load_votes, slug, subgroup, Outcome, Votes};
use crate::config::{OutputFormat, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::Outputs;

pub struct GroupSweep {
    pub name: String,
    pub table: SweepTable,
}

#[derive(Serialize)]
struct SweepJson<'a> {
    group: &'a str,
    /// Divisor for normalized thresholds (`t_norm = t / t_scale`).
    t_scale: u32,
    table: &'a SweepTable,
}

/// Threshold range from the config, defaulting the top to one past the
/// vote count.
pub(crate) fn t_range(config: &RunConfig, votes: &Votes) -> CliResult<(u32, u32)> {
    let t_max = config.t_max.unwrap_or(votes.vote_len + 1);
    if config.t_min > t_max {
        return Err(CliError::usage(format!(
            "--t-min {} is above --t-max {t_max}",
            config.t_min
        )));
    }
    Ok((config.t_min, t_max))
}

pub(crate) fn sweeps(config: &RunConfig, votes: &Votes) -> CliResult<Vec<GroupSweep>> {
    let (t_min, t_max) = t_range(config, votes)?;
    if config.subgroups.is_empty() {
        return Err(CliError::usage("no subgroups requested"));
    }
    config
        .subgroups
        .iter()
        .map(|name| {
            let members = subgroup(&votes.records, name)?;
            let table = sweep(&votes.distances, t_min, t_max, members.as_deref())?;
            Ok(GroupSweep {
                name: name.clone(),
                table,
            })
        })
        .collect()
}

pub(crate) fn run(config: &RunConfig, out: &mut Outputs) -> CliResult<Outcome> {
    let votes = load_votes(config, out)?;
    let (_, t_scale) = t_range(config, &votes)?;
    let groups = sweeps(config, &votes)?;
    for g in &groups {
        let stem = slug(&g.name);
        if config.wants(OutputFormat::Csv) {
            out.write(
                &format!("sweep_{stem}.csv"),
                &report::sweep_csv(&g.table, t_scale),
            )?;
        }
        if config.wants(OutputFormat::Json) {
            let json = SweepJson {
                group: &g.name,
                t_scale,
                table: &g.table,
            };
            out.write(&format!("sweep_{stem}.json"), &report::to_json(&json))?;
        }
        write_plots(out, &stem, &g.table)?;
    }
    Ok(Outcome::ok(human_tables(&groups)))
}

type RowValue = fn(&ramstat_core::SweepRow) -> f64;

fn write_plots(out: &mut Outputs, stem: &str, table: &SweepTable) -> CliResult<()> {
    let t = |r: &ramstat_core::SweepRow| r.t as f64;
    let series: [(&str, RowValue); 4] = [
        ("mono", |r| r.census.mono_fraction),
        ("red", |r| r.census.red_fraction()),
        ("blue", |r| r.census.blue_fraction()),
        ("transitivity", |r| r.transitivity.completion_ratio),
    ];
    for (name, value) in series {
        let data = report::plot_series(table.rows.iter().map(|r| (t(r), value(r))));
        out.write(&format!("plots/{stem}_{name}.csv"), &data)?;
    }
    if let Some(g) = table.goodman {
        let data = report::plot_series(table.rows.iter().map(|r| (t(r), g.forced_fraction)));
        out.write(&format!("plots/{stem}_goodman.csv"), &data)?;
    }
    Ok(())
}

pub(crate) fn human_tables(groups: &[GroupSweep]) -> String {
    let named: Vec<(&str, &SweepTable)> =
        groups.iter().map(|g| (g.name.as_str(), &g.table)).collect();
    let mut s = report::side_by_side(
        "Monochromatic triangle fraction (minimum in brackets)",
        &named,
        Column::MonoFraction,
    );
    s.push('\n');
    s.push_str(&report::side_by_side(
        "Path-completion ratio (minimum in brackets)",
        &named,
        Column::Transitivity,
    ));
    for g in groups {
        if let Some(min) = g.table.min_mono() {
            let _ = writeln!(
                s,
                "{}: n={}, minimum mono {} at t={}",
                g.name,
                g.table.n,
                report::fmt3(min.census.mono_fraction),
                min.t
            );
        }
    }
    s
}
