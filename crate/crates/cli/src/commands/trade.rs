use std::fmt::Write as _;

use serde::Serialize;

use ramstat_core::bounds::{expected_mono, goodman_fraction, normalized_threshold, thomason_bound};
use ramstat_core::census::{
    clique_census, max_clique_with_budget, neighborhood_density, transitivity_from_census,
    triangle_census,
};
use ramstat_core::ingest::build_trade_graph;
use ramstat_core::report::{self, fmt3};
use ramstat_core::stats::{
    bar_chi2, bias_summary, chi2_deviation, chi2_vs_constant, dichotomy, Chi2Kind,
};
use ramstat_core::{Bias, Chi2Report, Color, MaxClique, Series, TwoColoring};

use super::{load_flows, Outcome};
use crate::config::{OutputFormat, RunConfig};
use crate::error::{CliError, CliResult, EXIT_BUDGET};
use crate::output::Outputs;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LabeledDegree {
    pub label: String,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Extremal {
    pub size: usize,
    pub members: Vec<String>,
    /// False when the search budget ran out; `size` is then a lower bound.
    pub exact: bool,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderRow {
    pub m: u32,
    pub total: u64,
    pub red: u64,
    pub blue: u64,
    pub red_fraction: f64,
    pub blue_fraction: f64,
    pub mono_fraction: f64,
    pub reference_kind: Chi2Kind,
    pub reference: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Density {
    pub label: String,
    pub blue_degree: usize,
    pub density: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TradeChi2Row {
    pub m: u32,
    pub observed: f64,
    pub expected: f64,
    pub reference: f64,
    pub data: Chi2Report,
    pub expectation: Chi2Report,
    pub deviation: Chi2Report,
    pub significant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TradeChi2 {
    pub k: usize,
    pub t_norm: f64,
    pub rows: Vec<TradeChi2Row>,
    pub bar_data: f64,
    pub bar_expectation: f64,
    pub note: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TradeReport {
    pub n: usize,
    pub k: usize,
    pub blue_edges: u64,
    pub mean_blue_degree: f64,
    pub top_blue_degrees: Vec<LabeledDegree>,
    pub max_blue_clique: Extremal,
    pub max_blue_independent_set: Extremal,
    pub orders: Vec<OrderRow>,
    pub bias: Option<Bias>,
    pub dichotomy: Option<f64>,
    pub mono_paths2: u64,
    pub completion_ratio: f64,
    pub densities: Vec<Density>,
    pub chi2: TradeChi2,
}

const TRADE_NOTE: &str =
    "single-point comparison at t = k / n; expectation uses edge probability t_norm";

fn label(g: &TwoColoring, v: usize) -> String {
    g.label(v).map_or_else(|| v.to_string(), str::to_string)
}

fn extremal(g: &TwoColoring, c: &MaxClique) -> Extremal {
    Extremal {
        size: c.size,
        members: c.witness.iter().map(|&v| label(g, v)).collect(),
        exact: c.exact,
        nodes: c.nodes,
    }
}

fn reference(n: u64, m: u32) -> CliResult<(Chi2Kind, f64)> {
    if m == 3 {
        Ok((Chi2Kind::VsGoodman, goodman_fraction(n)?.forced_fraction))
    } else {
        Ok((Chi2Kind::VsThomason, thomason_bound(m)?))
    }
}

fn check_orders(orders: &[u32]) -> CliResult<()> {
    if orders.is_empty() || orders.iter().any(|m| !(3..=5).contains(m)) {
        return Err(CliError::usage(
            "--orders takes clique orders between 3 and 5",
        ));
    }
    Ok(())
}

pub fn order_rows(g: &TwoColoring, orders: &[u32]) -> CliResult<Vec<OrderRow>> {
    check_orders(orders)?;
    orders
        .iter()
        .map(|&m| {
            let c = clique_census(g, m)?;
            let (reference_kind, reference) = reference(g.n() as u64, m)?;
            Ok(OrderRow {
                m,
                total: c.total,
                red: c.red_count,
                blue: c.blue_count,
                red_fraction: c.red_fraction(),
                blue_fraction: c.blue_fraction(),
                mono_fraction: c.mono_fraction,
                reference_kind,
                reference,
            })
        })
        .collect()
}

/// Observed and expected monochromatic fractions against the Goodman or
/// Thomason reference at the single normalized threshold `k / n`.
pub fn trade_chi2(
    n: usize,
    k: usize,
    rows: &[OrderRow],
    df: u32,
    significance: f64,
) -> CliResult<TradeChi2> {
    let t_norm = normalized_threshold(k as u64, n as u64).min(1.0);
    let point = vec![k as f64];
    let mut out = Vec::new();
    for r in rows {
        let expected = expected_mono(n as u64, r.m, t_norm)?.mono_fraction();
        let data = chi2_vs_constant(
            &Series::new(point.clone(), vec![r.mono_fraction])?,
            r.reference,
            r.reference_kind,
            df,
        )?;
        let expectation = chi2_vs_constant(
            &Series::new(point.clone(), vec![expected])?,
            r.reference,
            r.reference_kind,
            df,
        )?;
        let deviation = chi2_deviation(&data, &expectation)?;
        out.push(TradeChi2Row {
            m: r.m,
            observed: r.mono_fraction,
            expected,
            reference: r.reference,
            data,
            expectation,
            deviation,
            significant: deviation.significant(significance),
        });
    }
    let data: Vec<Chi2Report> = out.iter().map(|r| r.data).collect();
    let expectation: Vec<Chi2Report> = out.iter().map(|r| r.expectation).collect();
    Ok(TradeChi2 {
        k,
        t_norm,
        bar_data: bar_chi2(&data)?,
        bar_expectation: bar_chi2(&expectation)?,
        rows: out,
        note: TRADE_NOTE,
    })
}

pub fn analyze(g: &TwoColoring, config: &RunConfig) -> CliResult<TradeReport> {
    let n = g.n();
    let mut degrees: Vec<LabeledDegree> = (0..n)
        .map(|v| LabeledDegree {
            label: label(g, v),
            degree: g.degree(Color::Blue, v),
        })
        .collect();
    degrees.sort_by(|a, b| b.degree.cmp(&a.degree).then_with(|| a.label.cmp(&b.label)));
    degrees.truncate(5);

    let blue_edges = g.edge_count(Color::Blue);
    let tri = triangle_census(g);
    let tr = transitivity_from_census(&tri);
    let orders = order_rows(g, &config.orders)?;

    let densities = config
        .density_vertices
        .iter()
        .map(|name| {
            let v = g
                .vertex_by_label(name)
                .ok_or_else(|| CliError::usage(format!("no country labelled {name:?}")))?;
            Ok(Density {
                label: name.clone(),
                blue_degree: g.degree(Color::Blue, v),
                density: neighborhood_density(g, v, Color::Blue).ok(),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;

    let blue_clique = max_clique_with_budget(g, Color::Blue, config.budget);
    let independent = max_clique_with_budget(g, Color::Red, config.budget);

    Ok(TradeReport {
        n,
        k: config.k,
        blue_edges,
        mean_blue_degree: if n == 0 {
            0.0
        } else {
            2.0 * blue_edges as f64 / n as f64
        },
        top_blue_degrees: degrees,
        max_blue_clique: extremal(g, &blue_clique),
        max_blue_independent_set: extremal(g, &independent),
        chi2: trade_chi2(n, config.k, &orders, config.df, config.significance)?,
        orders,
        bias: bias_summary(&tri).ok(),
        dichotomy: dichotomy(&tri).ok(),
        mono_paths2: tr.mono_paths2,
        completion_ratio: tr.completion_ratio,
        densities,
    })
}

fn build(config: &RunConfig, out: &mut Outputs) -> CliResult<TwoColoring> {
    let flows = load_flows(config, out)?;
    let g = build_trade_graph(&flows, config.k)?;
    if g.n() < 3 {
        return Err(CliError::usage(
            "trade graph needs at least three countries",
        ));
    }
    Ok(g)
}

pub(crate) fn run(config: &RunConfig, out: &mut Outputs) -> CliResult<Outcome> {
    let g = build(config, out)?;
    let r = analyze(&g, config)?;
    if config.wants(OutputFormat::Json) {
        out.write("trade.json", &report::to_json(&r))?;
    }
    if config.wants(OutputFormat::Csv) {
        out.write("trade.csv", &summary_csv(&r))?;
        out.write("trade_orders.csv", &orders_csv(&r.orders))?;
        let mut degrees = String::from("label,blue_degree\n");
        for v in 0..g.n() {
            let _ = writeln!(degrees, "{},{}", label(&g, v), g.degree(Color::Blue, v));
        }
        out.write("trade_degrees.csv", &degrees)?;
        out.write("trade_chi2.csv", &chi2_csv(&r.chi2))?;
    }
    let exit = if r.max_blue_clique.exact && r.max_blue_independent_set.exact {
        crate::error::EXIT_OK
    } else {
        EXIT_BUDGET
    };
    let mut stdout = human(&r);
    if exit == EXIT_BUDGET {
        stdout.push_str("search budget exhausted: clique sizes are lower bounds\n");
    }
    Ok(Outcome { stdout, exit })
}

pub(crate) fn run_chi2(config: &RunConfig, out: &mut Outputs) -> CliResult<Outcome> {
    let g = build(config, out)?;
    let orders = order_rows(&g, &config.orders)?;
    let chi2 = trade_chi2(g.n(), config.k, &orders, config.df, config.significance)?;
    if config.wants(OutputFormat::Csv) {
        out.write("chi2_trade.csv", &chi2_csv(&chi2))?;
    }
    if config.wants(OutputFormat::Json) {
        out.write("chi2_trade.json", &report::to_json(&chi2))?;
    }
    Ok(Outcome::ok(chi2_human(&chi2)))
}

fn summary_csv(r: &TradeReport) -> String {
    let mut s = String::from("key,value\n");
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(s, "{k},{v}");
    };
    kv("n", r.n.to_string());
    kv("k", r.k.to_string());
    kv("blue_edges", r.blue_edges.to_string());
    kv("mean_blue_degree", r.mean_blue_degree.to_string());
    kv("max_blue_clique", r.max_blue_clique.size.to_string());
    kv("max_blue_clique_exact", r.max_blue_clique.exact.to_string());
    kv(
        "max_blue_independent_set",
        r.max_blue_independent_set.size.to_string(),
    );
    kv(
        "max_blue_independent_set_exact",
        r.max_blue_independent_set.exact.to_string(),
    );
    kv("mono_paths2", r.mono_paths2.to_string());
    kv("completion_ratio", r.completion_ratio.to_string());
    if let Some(d) = r.dichotomy {
        kv("dichotomy", d.to_string());
    }
    if let Some(b) = r.bias {
        kv("red_share", b.red_share.to_string());
        kv("blue_share", b.blue_share.to_string());
        kv("bias_ratio", b.bias_ratio.to_string());
    }
    for d in &r.densities {
        kv(
            &format!("density:{}", d.label),
            d.density.map_or(String::new(), |x| x.to_string()),
        );
    }
    s
}

fn orders_csv(rows: &[OrderRow]) -> String {
    let mut s = String::from(
        "m,total,red,blue,red_fraction,blue_fraction,mono_fraction,reference_kind,reference\n",
    );
    for r in rows {
        let kind = serde_json::to_value(r.reference_kind).expect("kind");
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{}",
            r.m,
            r.total,
            r.red,
            r.blue,
            r.red_fraction,
            r.blue_fraction,
            r.mono_fraction,
            kind.as_str().unwrap_or_default(),
            r.reference
        );
    }
    s
}

fn chi2_csv(c: &TradeChi2) -> String {
    let mut s = String::from(
        "m,t_norm,observed,expected,reference,chi2_data,chi2_expectation,deviation,df,p_value,significant\n",
    );
    for r in &c.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.m,
            c.t_norm,
            r.observed,
            r.expected,
            r.reference,
            r.data.statistic,
            r.expectation.statistic,
            r.deviation.statistic,
            r.deviation.df,
            r.deviation.p_value,
            r.significant
        );
    }
    let _ = writeln!(
        s,
        "bar,{},,,,{},{},,,,",
        c.t_norm, c.bar_data, c.bar_expectation
    );
    s
}

fn pct(x: f64) -> String {
    format!("{:.1}%", 100.0 * x)
}

fn human(r: &TradeReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} countries, {} blue edges, mean blue degree {:.1}",
        r.n, r.blue_edges, r.mean_blue_degree
    );
    let top: Vec<String> = r
        .top_blue_degrees
        .iter()
        .map(|d| format!("{} ({})", d.label, d.degree))
        .collect();
    let _ = writeln!(s, "highest blue degrees: {}", top.join(", "));
    let _ = writeln!(
        s,
        "largest blue clique: {} [{}]",
        r.max_blue_clique.size,
        r.max_blue_clique.members.join(", ")
    );
    let _ = writeln!(
        s,
        "largest blue independent set: {}",
        r.max_blue_independent_set.size
    );
    let _ = writeln!(
        s,
        "{:>3} {:>8} {:>8} {:>8} {:>10}",
        "m", "red", "blue", "mono", "reference"
    );
    for o in &r.orders {
        let _ = writeln!(
            s,
            "{:>3} {:>8} {:>8} {:>8} {:>10}",
            o.m,
            pct(o.red_fraction),
            pct(o.blue_fraction),
            pct(o.mono_fraction),
            format!("{:.5}", o.reference)
        );
    }
    let _ = writeln!(s, "path completion: {}", pct(r.completion_ratio));
    for d in &r.densities {
        let v = d.density.map_or("undefined".into(), fmt3);
        let _ = writeln!(s, "blue neighborhood density of {}: {v}", d.label);
    }
    s.push_str(&chi2_human(&r.chi2));
    s
}

fn chi2_human(c: &TradeChi2) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "chi-squared at t_norm = {:.4} (* = significant)",
        c.t_norm
    );
    for r in &c.rows {
        let mark = if r.significant { " *" } else { "" };
        let _ = writeln!(
            s,
            "  K{}: data {:.3}, expectation {:.3}, difference {:.3}, p = {:.6}{mark}",
            r.m,
            r.data.statistic,
            r.expectation.statistic,
            r.deviation.statistic,
            r.deviation.p_value
        );
    }
    let _ = writeln!(
        s,
        "  mean over orders: data {:.3}, expectation {:.3}",
        c.bar_data, c.bar_expectation
    );
    s
}
