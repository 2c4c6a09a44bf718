use std::process::Command as Process;

use clap::Parser;
use ramstat_cli::args::Cli;
use ramstat_cli::output::read_manifest;
use ramstat_cli::{run, Command, InputFormat};
use ramstat_core::bounds::goodman_fraction;
use ramstat_core::census::triangle_census;
use ramstat_core::ingest::{hamming_matrix, parse_votes, threshold_coloring};
use ramstat_core::VoteFormat;

mod common;
use common::*;

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_ramstat"))
}

fn ring_flows(n: usize) -> String {
    let mut s = String::from("exporter,importer,volume\n");
    for i in 0..n {
        for j in [(i + 1) % n, (i + n - 1) % n] {
            s.push_str(&format!("C{i},C{j},10\n"));
        }
        // a small flow to a non-neighbor that never makes the top two
        s.push_str(&format!("C{i},C{},1\n", (i + 3) % n));
    }
    s
}

#[test]
fn sweep_writes_tables_plots_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "votes.data", &synthetic_votes(30, 25, 3));
    let out = dir.path().join("out");
    let outcome = run(&config(Command::Sweep, Some(input.clone()), &out)).unwrap();
    assert_eq!(outcome.exit, 0);
    assert!(outcome.stdout.contains("minimum"));

    for g in ["G", "D", "R"] {
        let csv = std::fs::read_to_string(out.join(format!("sweep_{g}.csv"))).unwrap();
        let mut lines = csv.lines();
        assert!(lines.next().unwrap().starts_with("t,"));
        let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
        for r in rows.iter().filter(|r| r[0] != "goodman") {
            for col in 7..10 {
                let x: f64 = r[col].parse().unwrap();
                assert!((0.0..=1.0).contains(&x), "{g} {r:?}");
            }
        }
        let goodman = rows.iter().find(|r| r[0] == "goodman").unwrap();
        let n: u64 = goodman[2].parse().unwrap();
        let frac: f64 = goodman[7].parse().unwrap();
        assert_eq!(frac, goodman_fraction(n).unwrap().forced_fraction);
        for plot in ["mono", "red", "blue", "transitivity", "goodman"] {
            assert!(out.join(format!("plots/{g}_{plot}.csv")).exists());
        }
    }

    let m = read_manifest(&out).unwrap();
    assert_eq!(m.config.command, Command::Sweep);
    assert_eq!(m.config.inputs, vec![input]);
    assert_eq!(m.inputs.len(), 1);
    assert!(m.outputs.iter().any(|f| f.path == "sweep_G.csv"));
    let mut sorted = m.outputs.clone();
    sorted.sort_by(|a, b| a.path.cmp(&b.path));
    assert_eq!(sorted, m.outputs);
}

#[test]
fn single_threshold_row_matches_direct_census() {
    let dir = tempfile::tempdir().unwrap();
    let text = synthetic_votes(20, 20, 11);
    let input = write(dir.path(), "votes.data", &text);
    let out = dir.path().join("out");
    let cli = Cli::try_parse_from([
        "ramstat",
        "sweep",
        "--input",
        input.to_str().unwrap(),
        "--subgroup",
        "G",
        "--t",
        "7",
        "7",
        "--out-dir",
        out.to_str().unwrap(),
    ])
    .unwrap();
    let (cfg, threads) = cli.into_config();
    assert_eq!((cfg.t_min, cfg.t_max), (7, Some(7)));
    assert_eq!(threads, None);
    run(&cfg).unwrap();

    let records = parse_votes(text.as_bytes(), VoteFormat::UciHouseVotes84).unwrap();
    let direct =
        triangle_census(&threshold_coloring(&hamming_matrix(&records).unwrap(), 7).unwrap());
    let csv = std::fs::read_to_string(out.join("sweep_G.csv")).unwrap();
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "7");
    assert_eq!(row[6].parse::<u64>().unwrap(), direct.mono);
    assert_eq!(row[4].parse::<u64>().unwrap(), direct.red_triangles);
}

#[test]
fn subgroup_flag_parses() {
    let cli = Cli::try_parse_from([
        "ramstat",
        "chi2",
        "--input",
        "x",
        "--subgroup",
        "D",
        "--t",
        "7",
        "7",
    ])
    .unwrap();
    let (cfg, _) = cli.into_config();
    assert_eq!(cfg.subgroups, vec!["D".to_string()]);
    assert_eq!(cfg.t_min, 7);
    assert_eq!(cfg.t_max, Some(7));
    assert_eq!(cfg.input_format, InputFormat::Uci);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let status = |args: &[&str]| {
        bin()
            .args(args)
            .env("RAMSTAT_OUT_DIR", &out)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(status(&["frobnicate"]), Some(1));
    assert_eq!(status(&["simulate", "--samples", "0"]), Some(1));
    assert_eq!(
        status(&["sweep", "--input", "/nonexistent/votes.data"]),
        Some(2)
    );

    let bad = write(
        dir.path(),
        "bad.data",
        "democrat,y,n,maybe,y,n,y,n,y,n,y,n,y,n,y,n,y\n",
    );
    assert_eq!(
        status(&["sweep", "--input", bad.to_str().unwrap()]),
        Some(3)
    );

    let flows = write(dir.path(), "flows.csv", &synthetic_flows(60, 2));
    assert_eq!(
        status(&["trade", "--input", flows.to_str().unwrap(), "--budget", "1"]),
        Some(4)
    );
    assert_eq!(
        status(&["trade", "--input", flows.to_str().unwrap()]),
        Some(0)
    );
}

#[test]
fn out_dir_comes_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("from-env");
    let input = write(dir.path(), "votes.data", SAMPLE6);
    let status = bin()
        .args([
            "sweep",
            "--input",
            input.to_str().unwrap(),
            "--subgroup",
            "G",
        ])
        .env("RAMSTAT_OUT_DIR", &out)
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    assert!(out.join("manifest.json").exists());
    assert!(out.join("sweep_G.csv").exists());
}

#[test]
fn trade_ring_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "ring.csv", &ring_flows(6));
    let out = dir.path().join("out");
    let mut cfg = config(Command::Trade, Some(input), &out);
    cfg.k = 2;
    cfg.density_vertices = vec!["C0".into()];
    let outcome = run(&cfg).unwrap();
    assert_eq!(outcome.exit, 0);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("trade.json")).unwrap()).unwrap();
    assert_eq!(report["n"], 6);
    assert_eq!(report["blue_edges"], 6);
    assert_eq!(report["max_blue_clique"]["size"], 2);
    assert_eq!(
        report["max_blue_clique"]["members"],
        serde_json::json!(["C0", "C1"])
    );
    assert_eq!(report["max_blue_independent_set"]["size"], 3);
    // C0's ring neighbours C1 and C5 are not adjacent
    assert_eq!(report["densities"][0]["density"], 0.0);
    assert_eq!(report["orders"][0]["red"], 2);
    assert_eq!(report["orders"][0]["blue"], 0);
    for f in [
        "trade.csv",
        "trade_orders.csv",
        "trade_degrees.csv",
        "trade_chi2.csv",
    ] {
        assert!(out.join(f).exists(), "{f}");
    }
}

#[test]
fn unknown_density_vertex_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "ring.csv", &ring_flows(6));
    let mut cfg = config(Command::Trade, Some(input), &dir.path().join("out"));
    cfg.density_vertices = vec!["Atlantis".into()];
    assert_eq!(run(&cfg).unwrap_err().code, 1);
}

#[test]
fn simulate_matches_expectation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let mut cfg = config(Command::Simulate, None, &out);
    cfg.n = 20;
    cfg.samples = 2000;
    cfg.t_step = 0.05;
    run(&cfg).unwrap();
    let sim: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("simulate.json")).unwrap()).unwrap();
    let rows = sim["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 21);
    for r in rows {
        let t = r["t"].as_f64().unwrap();
        let analytic = r["analytic"].as_f64().unwrap();
        let empirical = r["empirical"].as_f64().unwrap();
        let stderr = r["stderr"].as_f64().unwrap();
        if t == 0.0 || t == 1.0 {
            assert_eq!(stderr, 0.0);
            assert_eq!(empirical, 1140.0);
        } else {
            assert!((empirical - analytic).abs() <= 3.0 * stderr + 1e-9, "t {t}");
        }
    }
}

#[test]
fn simulate_exhaustive_small() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = config(Command::Simulate, None, &dir.path().join("out"));
    cfg.n = 6;
    cfg.samples = 10;
    cfg.exhaustive = true;
    let outcome = run(&cfg).unwrap();
    assert!(outcome.stdout.contains("minimum 2"), "{}", outcome.stdout);
    cfg.n = 9;
    assert_eq!(run(&cfg).unwrap_err().code, 1);
}

#[test]
fn chi2_on_votes_and_trade() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "votes.data", &synthetic_votes(40, 35, 5));
    let out = dir.path().join("votes-out");
    let outcome = run(&config(Command::Chi2, Some(input), &out)).unwrap();
    assert_eq!(outcome.exit, 0);
    let csv = std::fs::read_to_string(out.join("chi2.csv")).unwrap();
    assert!(csv.lines().count() > 3);
    assert!(out.join("chi2.json").exists());

    let flows = write(dir.path(), "flows.csv", &synthetic_flows(40, 1));
    let out = dir.path().join("trade-out");
    let mut cfg = config(Command::Chi2, Some(flows), &out);
    cfg.input_format = InputFormat::Trade;
    run(&cfg).unwrap();
    assert!(out.join("chi2_trade.csv").exists());
}

#[test]
fn bounds_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let outcome = run(&config(Command::Bounds, None, &out)).unwrap();
    assert!(outcome.stdout.contains("0.00183"), "{}", outcome.stdout);
    let csv = std::fs::read_to_string(out.join("bounds.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 18);
}

#[test]
fn json_only_skips_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let mut cfg = config(Command::Bounds, None, &out);
    cfg.formats = vec![ramstat_cli::OutputFormat::Json];
    run(&cfg).unwrap();
    assert!(out.join("bounds.json").exists());
    assert!(!out.join("bounds.csv").exists());
}
