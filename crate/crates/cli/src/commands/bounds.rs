use std::fmt::Write as _;

use serde::Serialize;

use ramstat_core::bounds::{goodman_fraction, goodman_min, schwenk_forced, thomason_bound};
use ramstat_core::report;

use super::Outcome;
use crate::config::{OutputFormat, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::Outputs;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub n: u64,
    pub total: u64,
    pub goodman: u64,
    pub schwenk: u64,
    pub forced_fraction: f64,
    pub approx_fraction: f64,
    pub asymptotic_fraction: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bounds {
    pub rows: Vec<BoundRow>,
    /// `(m, 0.936 * 2^(1 - C(m,2)))` for each requested order of at least 4.
    pub thomason: Vec<(u32, f64)>,
}

pub fn bounds(n_min: u64, n_max: u64, orders: &[u32]) -> CliResult<Bounds> {
    if n_min < 3 || n_min > n_max {
        return Err(CliError::usage(format!(
            "need 3 <= --n-min <= --n-max, got {n_min}..{n_max}"
        )));
    }
    let rows = (n_min..=n_max)
        .map(|n| {
            let g = goodman_fraction(n)?;
            Ok(BoundRow {
                n,
                total: g.total,
                goodman: goodman_min(n),
                schwenk: schwenk_forced(n),
                forced_fraction: g.forced_fraction,
                approx_fraction: g.approx_fraction,
                asymptotic_fraction: g.asymptotic_fraction,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let thomason = orders
        .iter()
        .filter(|&&m| m >= 4)
        .map(|&m| Ok((m, thomason_bound(m)?)))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Bounds { rows, thomason })
}

pub(crate) fn run(config: &RunConfig, out: &mut Outputs) -> CliResult<Outcome> {
    let b = bounds(config.n_min, config.n_max, &config.orders)?;
    if config.wants(OutputFormat::Csv) {
        let mut s = String::from(
            "n,total,goodman,schwenk,forced_fraction,approx_fraction,asymptotic_fraction\n",
        );
        for r in &b.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                r.n,
                r.total,
                r.goodman,
                r.schwenk,
                r.forced_fraction,
                r.approx_fraction,
                r.asymptotic_fraction
            );
        }
        out.write("bounds.csv", &s)?;
        let mut t = String::from("m,thomason\n");
        for (m, v) in &b.thomason {
            let _ = writeln!(t, "{m},{v}");
        }
        out.write("thomason.csv", &t)?;
    }
    if config.wants(OutputFormat::Json) {
        out.write("bounds.json", &report::to_json(&b))?;
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>6} {:>12} {:>12} {:>12} {:>9}",
        "n", "C(n,3)", "Goodman", "Schwenk", "fraction"
    );
    for r in &b.rows {
        let _ = writeln!(
            s,
            "{:>6} {:>12} {:>12} {:>12} {:>9}",
            r.n,
            r.total,
            r.goodman,
            r.schwenk,
            report::fmt3(r.forced_fraction)
        );
    }
    for (m, v) in &b.thomason {
        let _ = writeln!(s, "Thomason K{m}: {v:.5}");
    }
    Ok(Outcome::ok(s))
}
