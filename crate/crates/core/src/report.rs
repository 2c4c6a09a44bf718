//! Text, CSV and JSON renderings of sweep tables and plot series.
//!
//! Human-facing numbers are rounded half-to-even to three decimals; machine
//! outputs keep full precision and exact integer counts.

use std::fmt::Write as _;

use serde::Serialize;

use crate::ingest::SweepTable;

/// Rounds to `places` decimals, ties to even.
pub fn round_half_even(x: f64, places: i32) -> f64 {
    let scale = 10f64.powi(places);
    (x * scale).round_ties_even() / scale
}

pub fn fmt3(x: f64) -> String {
    format!("{:.3}", round_half_even(x, 3))
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

pub const SWEEP_CSV_HEADER: &str =
    "t,t_norm,n,total,red,blue,mono,mono_fraction,red_fraction,blue_fraction,mono_paths2,transitivity";

/// One line per threshold, then a `goodman` line carrying the forced count
/// and fraction in the `mono` and `mono_fraction` columns.
pub fn sweep_csv(table: &SweepTable, t_scale: u32) -> String {
    let mut out = String::new();
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in &table.rows {
        let c = &r.census;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.t,
            r.t as f64 / t_scale.max(1) as f64,
            c.n,
            c.total,
            c.red_triangles,
            c.blue_triangles,
            c.mono,
            c.mono_fraction,
            c.red_fraction(),
            c.blue_fraction(),
            r.transitivity.mono_paths2,
            r.transitivity.completion_ratio,
        );
    }
    if let Some(g) = &table.goodman {
        let _ = writeln!(
            out,
            "goodman,,{},{},,,{},{},,,,",
            g.n, g.total, g.forced_count, g.forced_fraction
        );
    }
    out
}

/// Two-column `t,value` plot data.
pub fn plot_series<I: IntoIterator<Item = (f64, f64)>>(points: I) -> String {
    let mut out = String::from("t,value\n");
    for (t, v) in points {
        let _ = writeln!(out, "{t},{v}");
    }
    out
}

/// Which per-row quantity a side-by-side table shows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Column {
    MonoFraction,
    Transitivity,
}

impl Column {
    fn value(self, row: &crate::ingest::SweepRow) -> f64 {
        match self {
            Column::MonoFraction => row.census.mono_fraction,
            Column::Transitivity => row.transitivity.completion_ratio,
        }
    }
}

/// Side-by-side table of several sweeps over the same thresholds with each
/// column's minimum in brackets, plus a Goodman footer for mono fractions.
pub fn side_by_side(title: &str, tables: &[(&str, &SweepTable)], column: Column) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    let _ = write!(out, "{:>8}", "t");
    for (name, _) in tables {
        let _ = write!(out, " {:>9}", name);
    }
    out.push('\n');
    let minima: Vec<Option<u32>> = tables
        .iter()
        .map(|(_, t)| {
            let best = t
                .rows
                .iter()
                .map(|r| round_half_even(column.value(r), 3))
                .fold(f64::INFINITY, f64::min);
            t.rows
                .iter()
                .find(|r| round_half_even(column.value(r), 3) == best)
                .map(|r| r.t)
        })
        .collect();
    let thresholds: Vec<u32> = tables
        .first()
        .map(|(_, t)| t.rows.iter().map(|r| r.t).collect())
        .unwrap_or_default();
    for t in thresholds {
        let _ = write!(out, "{t:>8}");
        for ((_, table), min_t) in tables.iter().zip(&minima) {
            let cell = match table.rows.iter().find(|r| r.t == t) {
                Some(r) if Some(t) == *min_t => format!("[{}]", fmt3(column.value(r))),
                Some(r) => fmt3(column.value(r)),
                None => "-".into(),
            };
            let _ = write!(out, " {cell:>9}");
        }
        out.push('\n');
    }
    if column == Column::MonoFraction {
        let _ = write!(out, "{:>8}", "Goodman");
        for (_, table) in tables {
            let cell = table
                .goodman
                .map_or_else(|| "-".into(), |g| fmt3(g.forced_fraction));
            let _ = write!(out, " {cell:>9}");
        }
        out.push('\n');
    }
    out
}
