#![allow(dead_code)]

use std::path::{Path, PathBuf};

use ramstat_cli::{Command, RunConfig};

pub const SAMPLE6: &str = include_str!("../data/sample6.data");

/// Small deterministic xorshift generator for fixtures.
pub struct Xorshift(u64);

impl Xorshift {
    pub fn new(seed: u64) -> Self {
        Xorshift(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) | 1)
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// UCI-style vote rows: each party leans toward its own position on every
/// bill, with some abstentions.
pub fn synthetic_votes(democrats: usize, republicans: usize, seed: u64) -> String {
    let mut rng = Xorshift::new(seed);
    let lean: Vec<f64> = (0..16).map(|_| 0.15 + 0.7 * rng.unit()).collect();
    let mut out = String::new();
    for (party, count, flip) in [
        ("democrat", democrats, false),
        ("republican", republicans, true),
    ] {
        for _ in 0..count {
            out.push_str(party);
            for p in &lean {
                let p = if flip { 1.0 - p } else { *p };
                let r = rng.unit();
                let token = if r < 0.04 {
                    "?"
                } else if rng.unit() < p {
                    "y"
                } else {
                    "n"
                };
                out.push(',');
                out.push_str(token);
            }
            out.push('\n');
        }
    }
    out
}

/// Flow CSV over `n` countries with heavy-tailed economy sizes, grouped
/// into regions. Each country ships to a random set of partners; volumes
/// scale with both sizes and are boosted inside a region.
pub fn synthetic_flows(n: usize, seed: u64) -> String {
    let mut rng = Xorshift::new(seed);
    let size: Vec<f64> = (0..n).map(|i| 1.0 / ((i + 1) as f64).powf(1.1)).collect();
    let mut out = String::from("exporter,importer,volume\n");
    for e in 0..n {
        for i in 0..n {
            if e == i {
                continue;
            }
            let p = (0.35 + 40.0 * size[e] * size[i]).min(0.95);
            if rng.unit() < p {
                let regional = if e % 12 == i % 12 { 25.0 } else { 1.0 };
                let v = size[e] * size[i] * regional * (3.0 * (rng.unit() - 0.5)).exp() * 1e9;
                out.push_str(&format!("Country{e:03},Country{i:03},{v:.2}\n"));
            }
        }
    }
    out
}

pub fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

pub fn config(command: Command, input: Option<PathBuf>, out_dir: &Path) -> RunConfig {
    let mut c = RunConfig::new(command);
    c.inputs = input.into_iter().collect();
    c.out_dir = out_dir.to_path_buf();
    c
}

/// Every file under `dir` as `(relative path, bytes)`, sorted by path.
pub fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    fn walk(root: &Path, dir: &Path, out: &mut Vec<(String, Vec<u8>)>) {
        for entry in std::fs::read_dir(dir).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                walk(root, &p, out);
            } else {
                let rel = p.strip_prefix(root).unwrap().display().to_string();
                out.push((rel, std::fs::read(&p).unwrap()));
            }
        }
    }
    let mut out = Vec::new();
    walk(dir, dir, &mut out);
    out.sort();
    out
}
