use std::fmt::Write as _;

use serde::Serialize;

use ramstat_core::bounds::{expected_mono, normalized_threshold};
use ramstat_core::report;
use ramstat_core::stats::{chi2_deviation, chi2_vs_expectation, chi2_vs_goodman};
use ramstat_core::{Chi2Report, Series};

use super::sweep::{sweeps, t_range, GroupSweep};
use super::{load_votes, trade, Outcome};
use crate::config::{InputFormat, OutputFormat, RunConfig};
use crate::error::CliResult;
use crate::output::Outputs;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Observed fractions against the random-coloring expectation.
    DataVsExpectation,
    /// Observed fractions against the Goodman floor.
    DataVsGoodman,
    /// The expectation curve itself against the Goodman floor.
    ExpectationVsGoodman,
    /// `|DataVsGoodman - ExpectationVsGoodman|`.
    Deviation,
}

impl Comparison {
    const ALL: [Comparison; 4] = [
        Comparison::DataVsExpectation,
        Comparison::DataVsGoodman,
        Comparison::ExpectationVsGoodman,
        Comparison::Deviation,
    ];

    fn name(self) -> &'static str {
        match self {
            Comparison::DataVsExpectation => "data_vs_expectation",
            Comparison::DataVsGoodman => "data_vs_goodman",
            Comparison::ExpectationVsGoodman => "expectation_vs_goodman",
            Comparison::Deviation => "deviation",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Part {
    Blue,
    Red,
    Total,
}

impl Part {
    const ALL: [Part; 3] = [Part::Blue, Part::Red, Part::Total];

    fn name(self) -> &'static str {
        match self {
            Part::Blue => "blue",
            Part::Red => "red",
            Part::Total => "total",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Chi2Row {
    pub group: String,
    pub n: u64,
    pub comparison: Comparison,
    pub series: Part,
    pub report: Chi2Report,
    pub significant: bool,
}

#[derive(Serialize)]
struct Chi2Json<'a> {
    t_scale: u32,
    significance: f64,
    note: &'a str,
    rows: &'a [Chi2Row],
}

const GRID_NOTE: &str =
    "expected fractions use red-edge probability t / t_scale at each integer threshold t";

/// Every comparison for one subgroup's sweep.
pub fn group_rows(
    g: &GroupSweep,
    t_scale: u32,
    df: u32,
    significance: f64,
) -> CliResult<Vec<Chi2Row>> {
    let n = g.table.n;
    let ts: Vec<f64> = g.table.rows.iter().map(|r| r.t as f64).collect();
    let series = |f: &dyn Fn(usize) -> f64| Series::new(ts.clone(), (0..ts.len()).map(f).collect());
    let rows = &g.table.rows;
    let curves = rows
        .iter()
        .map(|r| {
            expected_mono(
                n,
                3,
                normalized_threshold(r.t as u64, t_scale as u64).min(1.0),
            )
        })
        .collect::<Result<Vec<_>, _>>()?;

    let observed = [
        series(&|i| rows[i].census.blue_fraction())?,
        series(&|i| rows[i].census.red_fraction())?,
        series(&|i| rows[i].census.mono_fraction)?,
    ];
    let expected = [
        series(&|i| curves[i].blue_fraction())?,
        series(&|i| curves[i].red_fraction())?,
        series(&|i| curves[i].mono_fraction())?,
    ];

    let mut out = Vec::new();
    for (idx, part) in Part::ALL.into_iter().enumerate() {
        let per_color = part != Part::Total;
        let dve = chi2_vs_expectation(&observed[idx], &expected[idx], df)?;
        let dvg = chi2_vs_goodman(&observed[idx], n, per_color, df)?;
        let evg = chi2_vs_goodman(&expected[idx], n, per_color, df)?;
        let dev = chi2_deviation(&dvg, &evg)?;
        for (comparison, report) in Comparison::ALL.into_iter().zip([dve, dvg, evg, dev]) {
            out.push(Chi2Row {
                group: g.name.clone(),
                n,
                comparison,
                series: part,
                report,
                significant: report.significant(significance),
            });
        }
    }
    Ok(out)
}

pub(crate) fn run(config: &RunConfig, out: &mut Outputs) -> CliResult<Outcome> {
    if config.input_format == InputFormat::Trade {
        return trade::run_chi2(config, out);
    }
    let votes = load_votes(config, out)?;
    let (_, t_scale) = t_range(config, &votes)?;
    let groups = sweeps(config, &votes)?;
    let mut rows = Vec::new();
    for g in &groups {
        rows.extend(group_rows(g, t_scale, config.df, config.significance)?);
    }
    if config.wants(OutputFormat::Csv) {
        out.write("chi2.csv", &rows_csv(&rows))?;
    }
    if config.wants(OutputFormat::Json) {
        let json = Chi2Json {
            t_scale,
            significance: config.significance,
            note: GRID_NOTE,
            rows: &rows,
        };
        out.write("chi2.json", &report::to_json(&json))?;
    }
    Ok(Outcome::ok(human(&groups, &rows, config.significance)))
}

pub fn rows_csv(rows: &[Chi2Row]) -> String {
    let mut s = String::from(
        "group,n,comparison,series,kind,statistic,df,p_value,points,skipped,significant\n",
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.group,
            r.n,
            r.comparison.name(),
            r.series.name(),
            serde_json::to_value(r.report.kind)
                .expect("kind")
                .as_str()
                .unwrap_or_default(),
            r.report.statistic,
            r.report.df,
            r.report.p_value,
            r.report.points,
            r.report.skipped,
            r.significant
        );
    }
    s
}

fn human(groups: &[GroupSweep], rows: &[Chi2Row], significance: f64) -> String {
    let mut s = String::new();
    let find = |g: &str, c: Comparison, p: Part| {
        rows.iter()
            .find(|r| r.group == g && r.comparison == c && r.series == p)
            .map(|r| r.report)
    };
    for c in Comparison::ALL {
        let _ = writeln!(s, "chi-squared, {}", c.name().replace('_', " "));
        let _ = writeln!(
            s,
            "{:>8} {:>10} {:>10} {:>10}",
            "group", "blue", "red", "total"
        );
        for g in groups {
            let _ = write!(s, "{:>8}", g.name);
            for p in Part::ALL {
                let cell =
                    find(&g.name, c, p).map_or("-".into(), |r| format!("{:.3}", r.statistic));
                let _ = write!(s, " {cell:>10}");
            }
            s.push('\n');
        }
        s.push('\n');
    }
    let _ = writeln!(
        s,
        "p-values of the deviation (* = significant at {significance})"
    );
    let _ = writeln!(
        s,
        "{:>8} {:>10} {:>10} {:>10}",
        "group", "blue", "red", "total"
    );
    for g in groups {
        let _ = write!(s, "{:>8}", g.name);
        for p in Part::ALL {
            let cell = find(&g.name, Comparison::Deviation, p).map_or("-".into(), |r| {
                let mark = if r.significant(significance) { "*" } else { "" };
                format!("{:.6}{mark}", r.p_value)
            });
            let _ = write!(s, " {cell:>10}");
        }
        s.push('\n');
    }
    let _ = writeln!(s, "note: {GRID_NOTE}");
    s
}
