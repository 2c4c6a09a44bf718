//! Datasets to colorings: roll-call votes, Hamming distances, threshold
//! sweeps, top-k trade partner graphs and seeded random colorings.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, BufReader, Read};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{goodman_fraction, GoodmanBound};
use crate::census::{
    transitivity_from_census, triangle_census, TransitivityReport, TriangleCensus,
};
use crate::coloring::TwoColoring;
use crate::error::{Error, Result};

/// Identifier of the pair-sampling scheme used by [`random_coloring`].
pub const RANDOM_GENERATOR: &str = "chacha8-rowmajor-v1";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Party {
    #[serde(rename = "D")]
    Democrat,
    #[serde(rename = "R")]
    Republican,
    Other(String),
}

impl Party {
    fn parse(token: &str) -> Party {
        match token.trim().to_ascii_lowercase().as_str() {
            "democrat" | "d" => Party::Democrat,
            "republican" | "r" => Party::Republican,
            _ => Party::Other(token.trim().to_string()),
        }
    }

    pub fn code(&self) -> &str {
        match self {
            Party::Democrat => "D",
            Party::Republican => "R",
            Party::Other(s) => s,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VoterRecord {
    pub id: String,
    pub party: Party,
    /// One of `Y`, `N`, `A` per vote.
    pub votes: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VoteFormat {
    /// UCI house-votes-84: party then 16 tokens in `{y, n, ?}`, no header.
    UciHouseVotes84,
    /// Headed CSV with a `party` column, an optional `id` column, and every
    /// other column a vote.
    GenericCsv,
}

impl std::str::FromStr for VoteFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uci" | "uci-house-votes-84" => Ok(VoteFormat::UciHouseVotes84),
            "csv" | "generic-csv" => Ok(VoteFormat::GenericCsv),
            other => Err(Error::InvalidInput(format!(
                "unknown vote format {other:?}"
            ))),
        }
    }
}

pub const UCI_VOTE_COUNT: usize = 16;

fn vote_symbol(token: &str, line: usize) -> Result<char> {
    match token.trim() {
        "y" | "Y" | "yes" => Ok('Y'),
        "n" | "N" | "no" => Ok('N'),
        "?" | "a" | "A" => Ok('A'),
        other => Err(Error::Parse {
            line,
            message: format!("unknown vote token {other:?}"),
        }),
    }
}

pub fn parse_votes<R: Read>(input: R, format: VoteFormat) -> Result<Vec<VoterRecord>> {
    match format {
        VoteFormat::UciHouseVotes84 => parse_uci(input),
        VoteFormat::GenericCsv => parse_generic(input),
    }
}

fn parse_uci<R: Read>(input: R) -> Result<Vec<VoterRecord>> {
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(input).lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != UCI_VOTE_COUNT + 1 {
            return Err(Error::Parse {
                line: line_no,
                message: format!(
                    "expected {} fields, found {}",
                    UCI_VOTE_COUNT + 1,
                    fields.len()
                ),
            });
        }
        let votes = fields[1..]
            .iter()
            .map(|t| vote_symbol(t, line_no))
            .collect::<Result<String>>()?;
        out.push(VoterRecord {
            id: line_no.to_string(),
            party: Party::parse(fields[0]),
            votes,
        });
    }
    Ok(out)
}

fn parse_generic<R: Read>(input: R) -> Result<Vec<VoterRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = reader.headers().map_err(csv_error)?.clone();
    let find = |name: &str| headers.iter().position(|h| h.eq_ignore_ascii_case(name));
    let party_col = find("party").ok_or(Error::Parse {
        line: 1,
        message: "header has no party column".into(),
    })?;
    let id_col = find("id");
    let vote_cols: Vec<usize> = (0..headers.len())
        .filter(|&c| c != party_col && Some(c) != id_col)
        .collect();
    if vote_cols.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "header declares no vote columns".into(),
        });
    }
    let mut out = Vec::new();
    for (ordinal, row) in reader.records().enumerate() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(ordinal + 2, |p| p.line() as usize);
        if row.len() != headers.len() {
            return Err(Error::Parse {
                line,
                message: format!("expected {} fields, found {}", headers.len(), row.len()),
            });
        }
        let votes = vote_cols
            .iter()
            .map(|&c| vote_symbol(&row[c], line))
            .collect::<Result<String>>()?;
        out.push(VoterRecord {
            id: id_col.map_or_else(|| (ordinal + 1).to_string(), |c| row[c].to_string()),
            party: Party::parse(&row[party_col]),
            votes,
        });
    }
    Ok(out)
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        csv::ErrorKind::UnequalLengths {
            expected_len, len, ..
        } => Error::Parse {
            line,
            message: format!("expected {expected_len} fields, found {len}"),
        },
        other => Error::Parse {
            line,
            message: format!("{other:?}"),
        },
    }
}

/// Indices of the records belonging to `party`, in file order.
pub fn party_members(records: &[VoterRecord], party: &Party) -> Vec<usize> {
    records
        .iter()
        .enumerate()
        .filter(|(_, r)| &r.party == party)
        .map(|(i, _)| i)
        .collect()
}

/// Symmetric pairwise distances with a zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        let mut d = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            d.extend_from_slice(row);
        }
        let m = DistanceMatrix { n, d };
        for i in 0..n {
            if m.get(i, i) != 0 {
                return Err(Error::InvalidInput(format!("nonzero diagonal at {i}")));
            }
            for j in i + 1..n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::InvalidInput(format!("asymmetric entry ({i}, {j})")));
                }
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.d[i * self.n + j]
    }

    fn off_diagonal(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| self.get(i, j)))
    }

    pub fn max_distance(&self) -> Option<u32> {
        self.off_diagonal().max()
    }

    pub fn min_distance(&self) -> Option<u32> {
        self.off_diagonal().min()
    }

    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        if let Some(&v) = vertices.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let k = vertices.len();
        let mut d = Vec::with_capacity(k * k);
        for &a in vertices {
            for &b in vertices {
                d.push(self.get(a, b));
            }
        }
        Ok(DistanceMatrix { n: k, d })
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.d
            .chunks(self.n.max(1))
            .map(<[u32]>::to_vec)
            .take(self.n)
            .collect()
    }
}

/// Number of positions at which two equal-length strings differ.
pub fn hamming(a: &str, b: &str) -> Result<u32> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "length mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.bytes().zip(b.bytes()).filter(|(x, y)| x != y).count() as u32)
}

pub fn hamming_matrix(records: &[VoterRecord]) -> Result<DistanceMatrix> {
    let n = records.len();
    if let Some(first) = records.first() {
        if let Some(bad) = records.iter().find(|r| r.votes.len() != first.votes.len()) {
            return Err(Error::InvalidInput(format!(
                "voter {} has {} votes, expected {}",
                bad.id,
                bad.votes.len(),
                first.votes.len()
            )));
        }
    }
    let mut d = vec![0u32; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let h = hamming(&records[i].votes, &records[j].votes)?;
            d[i * n + j] = h;
            d[j * n + i] = h;
        }
    }
    Ok(DistanceMatrix { n, d })
}

/// Blue where `d > t`, red where `d <= t`.
pub fn threshold_coloring(d: &DistanceMatrix, t: u32) -> Result<TwoColoring> {
    TwoColoring::from_fn(d.n(), |i, j| d.get(i, j) > t)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub t: u32,
    pub census: TriangleCensus,
    pub transitivity: TransitivityReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub n: u64,
    /// Goodman reference for `n`; absent below three vertices.
    pub goodman: Option<GoodmanBound>,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Row with the smallest monochromatic fraction (first on ties).
    pub fn min_mono(&self) -> Option<&SweepRow> {
        self.rows.iter().reduce(|a, b| {
            if b.census.mono_fraction < a.census.mono_fraction {
                b
            } else {
                a
            }
        })
    }

    pub fn min_transitivity(&self) -> Option<&SweepRow> {
        self.rows.iter().reduce(|a, b| {
            if b.transitivity.completion_ratio < a.transitivity.completion_ratio {
                b
            } else {
                a
            }
        })
    }
}

/// Threshold census for every `t` in `t_min..=t_max`, optionally restricted
/// to the induced subgroup. Thresholds are evaluated in parallel; rows come
/// back ordered by `t`.
pub fn sweep(
    d: &DistanceMatrix,
    t_min: u32,
    t_max: u32,
    subgroup: Option<&[usize]>,
) -> Result<SweepTable> {
    if t_min > t_max {
        return Err(Error::InvalidInput(format!(
            "empty threshold range {t_min}..={t_max}"
        )));
    }
    let owned;
    let d = match subgroup {
        Some([]) => return Err(Error::InvalidInput("empty subgroup".into())),
        Some(vs) => {
            owned = d.induced(vs)?;
            &owned
        }
        None => d,
    };
    if d.n() == 0 {
        return Err(Error::InvalidInput("no vertices to sweep".into()));
    }
    let rows = (t_min..=t_max)
        .into_par_iter()
        .map(|t| {
            let census = triangle_census(&threshold_coloring(d, t)?);
            Ok(SweepRow {
                t,
                census,
                transitivity: transitivity_from_census(&census),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let n = d.n() as u64;
    Ok(SweepTable {
        n,
        goodman: goodman_fraction(n).ok(),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TradeFlow {
    pub exporter: String,
    pub importer: String,
    pub volume: f64,
}

/// Reads `exporter,importer,volume` CSV (header required, any column order).
pub fn parse_trade_flows<R: Read>(input: R) -> Result<Vec<TradeFlow>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = reader.headers().map_err(csv_error)?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("header has no {name} column"),
            })
    };
    let (ce, ci, cv) = (col("exporter")?, col("importer")?, col("volume")?);
    let mut flows = Vec::new();
    for (ordinal, row) in reader.records().enumerate() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(ordinal + 2, |p| p.line() as usize);
        let volume: f64 = row[cv].parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad volume {:?}", &row[cv]),
        })?;
        if !volume.is_finite() || volume < 0.0 {
            return Err(Error::Parse {
                line,
                message: format!("volume must be finite and nonnegative, got {volume}"),
            });
        }
        let flow = TradeFlow {
            exporter: row[ce].to_string(),
            importer: row[ci].to_string(),
            volume,
        };
        if flow.exporter == flow.importer {
            return Err(Error::Parse {
                line,
                message: format!("{} trades with itself", flow.exporter),
            });
        }
        flows.push(flow);
    }
    Ok(flows)
}

/// Top-k partner graph. Countries are indexed alphabetically. Each country
/// marks blue its `k` largest export destinations and, separately, its `k`
/// largest import sources; the blue edge set is the union of all marks.
/// Duplicate `(exporter, importer)` rows are summed first, zero-volume pairs
/// never count as partners, and volume ties go to the alphabetically first
/// partner.
pub fn build_trade_graph(flows: &[TradeFlow], k: usize) -> Result<TwoColoring> {
    if k == 0 {
        return Err(Error::InvalidInput("partner count k must be >= 1".into()));
    }
    let mut countries = BTreeSet::new();
    let mut volume: BTreeMap<(&str, &str), f64> = BTreeMap::new();
    for f in flows {
        if f.exporter == f.importer {
            return Err(Error::InvalidInput(format!(
                "{} trades with itself",
                f.exporter
            )));
        }
        if !f.volume.is_finite() || f.volume < 0.0 {
            return Err(Error::InvalidInput(format!("bad volume {}", f.volume)));
        }
        countries.insert(f.exporter.as_str());
        countries.insert(f.importer.as_str());
        *volume.entry((&f.exporter, &f.importer)).or_default() += f.volume;
    }
    let labels: Vec<&str> = countries.into_iter().collect();
    let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    let mut exports: Vec<Vec<(f64, usize)>> = vec![Vec::new(); labels.len()];
    let mut imports: Vec<Vec<(f64, usize)>> = vec![Vec::new(); labels.len()];
    for (&(e, i), &v) in &volume {
        if v > 0.0 {
            exports[index[e]].push((v, index[i]));
            imports[index[i]].push((v, index[e]));
        }
    }
    let mut blue = Vec::new();
    for (c, lists) in exports.iter_mut().zip(imports.iter_mut()).enumerate() {
        for list in [lists.0, lists.1] {
            // partner indices are alphabetical, so ascending index breaks ties
            list.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
            blue.extend(list.iter().take(k).map(|&(_, p)| (c, p)));
        }
    }
    if labels.is_empty() {
        return Err(Error::InvalidInput("no trade flows".into()));
    }
    TwoColoring::from_blue_edges(labels.len(), blue)?
        .with_labels(labels.into_iter().map(String::from).collect())
}

/// Each pair independently blue with probability `t`, drawn from ChaCha8
/// seeded with `seed`, visiting pairs `i < j` in row-major order.
pub fn random_coloring(n: usize, t: f64, seed: u64) -> Result<TwoColoring> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidInput(format!(
            "probability {t} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    TwoColoring::from_fn(n, |_, _| rng.random_bool(t))
}
