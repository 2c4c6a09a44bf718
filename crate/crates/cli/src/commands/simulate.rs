use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use ramstat_core::bounds::{expected_mono, goodman_min};
use ramstat_core::census::triangle_census;
use ramstat_core::ingest::random_coloring;
use ramstat_core::report;
use ramstat_core::TwoColoring;

use super::Outcome;
use crate::config::{OutputFormat, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::Outputs;

/// Largest order for which every coloring is enumerated.
pub const EXHAUSTIVE_MAX_N: u64 = 7;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimRow {
    pub t: f64,
    pub analytic: f64,
    pub empirical: f64,
    pub stderr: f64,
    pub goodman: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Exhaustive {
    pub n: u64,
    pub colorings: u64,
    /// `(mono triangle count, number of colorings)`, ascending by count.
    pub distribution: Vec<(u64, u64)>,
    pub minimum: u64,
    pub mean: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Simulation {
    pub n: u64,
    pub samples: u64,
    pub seed: u64,
    pub generator: &'static str,
    pub rows: Vec<SimRow>,
    pub exhaustive: Option<Exhaustive>,
}

fn grid(step: f64) -> CliResult<Vec<f64>> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(CliError::usage(format!(
            "--t-step {step} must lie in (0, 1]"
        )));
    }
    let steps = (1.0 / step + 1e-9).floor() as u64;
    if (steps as f64 * step - 1.0).abs() < 1e-9 {
        // exact divisions of the unit interval, without accumulated error
        return Ok((0..=steps).map(|i| i as f64 / steps as f64).collect());
    }
    Ok((0..=steps).map(|i| i as f64 * step).collect())
}

/// Seed for sample `s` at grid point `i`.
fn sample_seed(seed: u64, samples: u64, i: usize, s: u64) -> u64 {
    seed.wrapping_add((i as u64).wrapping_mul(samples))
        .wrapping_add(s)
}

pub fn simulate(n: u64, step: f64, samples: u64, seed: u64) -> CliResult<Vec<SimRow>> {
    if samples == 0 {
        return Err(CliError::usage("--samples must be at least 1"));
    }
    if n < 3 {
        return Err(CliError::usage("simulation needs n >= 3"));
    }
    let floor = goodman_min(n);
    grid(step)?
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let counts = (0..samples)
                .into_par_iter()
                .map(|s| {
                    let c = random_coloring(n as usize, t, sample_seed(seed, samples, i, s))?;
                    Ok(triangle_census(&c).mono as f64)
                })
                .collect::<ramstat_core::Result<Vec<f64>>>()?;
            let mean = counts.iter().sum::<f64>() / samples as f64;
            let var = if samples > 1 {
                counts.iter().map(|c| (c - mean) * (c - mean)).sum::<f64>() / (samples - 1) as f64
            } else {
                0.0
            };
            Ok(SimRow {
                t,
                analytic: expected_mono(n, 3, t)?.expected_mono,
                empirical: mean,
                stderr: (var / samples as f64).sqrt(),
                goodman: floor,
            })
        })
        .collect()
}

/// Monochromatic triangle counts over all `2^C(n,2)` colorings.
pub fn exhaustive(n: u64) -> CliResult<Exhaustive> {
    if !(3..=EXHAUSTIVE_MAX_N).contains(&n) {
        return Err(CliError::usage(format!(
            "exhaustive mode needs 3 <= n <= {EXHAUSTIVE_MAX_N}"
        )));
    }
    let n = n as usize;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let colorings = 1u64 << pairs.len();
    let counts: Vec<u64> = (0..colorings)
        .into_par_iter()
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e);
            let c = TwoColoring::from_blue_edges(n, edges).expect("valid pairs");
            triangle_census(&c).mono
        })
        .collect();
    let mut distribution = BTreeMap::new();
    for c in &counts {
        *distribution.entry(*c).or_insert(0u64) += 1;
    }
    let total: u64 = counts.iter().sum();
    Ok(Exhaustive {
        n: n as u64,
        colorings,
        minimum: *distribution.keys().next().expect("nonempty"),
        mean: total as f64 / colorings as f64,
        distribution: distribution.into_iter().collect(),
    })
}

pub(crate) fn run(config: &RunConfig, out: &mut Outputs) -> CliResult<Outcome> {
    let rows = simulate(config.n, config.t_step, config.samples, config.seed)?;
    let exhaustive = if config.exhaustive {
        Some(exhaustive(config.n)?)
    } else {
        None
    };
    let sim = Simulation {
        n: config.n,
        samples: config.samples,
        seed: config.seed,
        generator: ramstat_core::ingest::RANDOM_GENERATOR,
        rows,
        exhaustive,
    };
    if config.wants(OutputFormat::Csv) {
        let mut s = String::from("t,analytic,empirical,stderr,goodman\n");
        for r in &sim.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                r.t, r.analytic, r.empirical, r.stderr, r.goodman
            );
        }
        out.write("simulate.csv", &s)?;
        if let Some(e) = &sim.exhaustive {
            let mut s = String::from("mono,colorings\n");
            for (m, c) in &e.distribution {
                let _ = writeln!(s, "{m},{c}");
            }
            out.write("exhaustive.csv", &s)?;
        }
    }
    if config.wants(OutputFormat::Json) {
        out.write("simulate.json", &report::to_json(&sim))?;
    }
    out.write(
        "plots/simulate_analytic.csv",
        &report::plot_series(sim.rows.iter().map(|r| (r.t, r.analytic))),
    )?;
    out.write(
        "plots/simulate_empirical.csv",
        &report::plot_series(sim.rows.iter().map(|r| (r.t, r.empirical))),
    )?;
    out.write(
        "plots/simulate_goodman.csv",
        &report::plot_series(sim.rows.iter().map(|r| (r.t, r.goodman as f64))),
    )?;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "n={}, {} samples per point, seed {}",
        sim.n, sim.samples, sim.seed
    );
    let _ = writeln!(
        s,
        "{:>6} {:>12} {:>12} {:>10}",
        "t", "analytic", "empirical", "stderr"
    );
    for r in &sim.rows {
        let _ = writeln!(
            s,
            "{:>6.3} {:>12.3} {:>12.3} {:>10.3}",
            r.t, r.analytic, r.empirical, r.stderr
        );
    }
    let _ = writeln!(s, "Goodman floor: {}", goodman_min(sim.n));
    if let Some(e) = &sim.exhaustive {
        let _ = writeln!(
            s,
            "exhaustive over {} colorings: minimum {}, mean {:.4}",
            e.colorings, e.minimum, e.mean
        );
    }
    Ok(Outcome::ok(s))
}
