//! Two-colored complete graphs.
//!
//! Only the blue edges are stored. The red edge set is always the complement
//! of blue over the off-diagonal pairs, so `blue + red + I` is the all-ones
//! matrix for every coloring by construction.

use serde::{Deserialize, Serialize};

use crate::bits::{self, BitMatrix};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub const BOTH: [Color; 2] = [Color::Red, Color::Blue];

    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl std::fmt::Display for Color {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

impl std::str::FromStr for Color {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "red" | "r" => Ok(Color::Red),
            "blue" | "b" => Ok(Color::Blue),
            other => Err(Error::InvalidInput(format!("unknown color {other:?}"))),
        }
    }
}

/// A complete graph on `n` vertices with every edge colored red or blue.
///
/// Immutable once built. Vertices are dense `0..n` indices; labels, when
/// present, are a parallel array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoColoring {
    blue: BitMatrix,
    labels: Option<Vec<String>>,
}

impl TwoColoring {
    /// All edges red.
    pub fn all_red(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "a coloring needs at least one vertex".into(),
            ));
        }
        Ok(TwoColoring {
            blue: BitMatrix::zeros(n),
            labels: None,
        })
    }

    /// All edges blue.
    pub fn all_blue(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| true)
    }

    /// Builds a coloring from an unordered blue pair list. Pairs may repeat or
    /// appear in either orientation.
    pub fn from_blue_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut c = Self::all_red(n)?;
        for (i, j) in edges {
            for v in [i, j] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if i == j {
                return Err(Error::LoopPair(i));
            }
            c.blue.set_sym(i, j);
        }
        Ok(c)
    }

    /// Colors pair `{i, j}` (called with `i < j`) blue iff `is_blue(i, j)`.
    pub fn from_fn(n: usize, mut is_blue: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut c = Self::all_red(n)?;
        for i in 0..n {
            for j in i + 1..n {
                if is_blue(i, j) {
                    c.blue.set_sym(i, j);
                }
            }
        }
        Ok(c)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::InvalidInput(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.blue.n()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels
            .as_ref()
            .and_then(|l| l.get(v))
            .map(String::as_str)
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    #[inline]
    pub fn is_blue(&self, i: usize, j: usize) -> bool {
        self.blue.get(i, j)
    }

    /// Color of the edge `{i, j}`, or `None` on the diagonal.
    #[inline]
    pub fn color(&self, i: usize, j: usize) -> Option<Color> {
        if i == j {
            None
        } else if self.blue.get(i, j) {
            Some(Color::Blue)
        } else {
            Some(Color::Red)
        }
    }

    #[inline]
    pub fn has_edge(&self, color: Color, i: usize, j: usize) -> bool {
        self.color(i, j) == Some(color)
    }

    /// Adjacency rows of one color. Red rows are derived from blue.
    pub fn adjacency(&self, color: Color) -> BitMatrix {
        match color {
            Color::Blue => self.blue.clone(),
            Color::Red => {
                let n = self.n();
                let mut red = BitMatrix::zeros(n);
                let tail = n % 64;
                for i in 0..n {
                    let row = red.row_mut(i);
                    for (o, b) in row.iter_mut().zip(self.blue.row(i)) {
                        *o = !b;
                    }
                    if tail != 0 {
                        *row.last_mut().unwrap() &= (1u64 << tail) - 1;
                    }
                    bits::clear(row, i);
                }
                red
            }
        }
    }

    pub fn degree(&self, color: Color, v: usize) -> usize {
        let blue = self.blue.row_count(v);
        match color {
            Color::Blue => blue,
            Color::Red => self.n() - 1 - blue,
        }
    }

    pub fn edge_count(&self, color: Color) -> u64 {
        let blue: u64 = (0..self.n())
            .map(|v| self.blue.row_count(v) as u64)
            .sum::<u64>()
            / 2;
        match color {
            Color::Blue => blue,
            Color::Red => choose2(self.n() as u64) - blue,
        }
    }

    /// Blue pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn blue_edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|i| {
                bits::ones(self.blue.row(i))
                    .filter(move |&j| j > i)
                    .map(move |j| (i, j))
            })
            .collect()
    }

    /// The coloring induced on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        for &v in vertices {
            if v >= self.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n(),
                });
            }
        }
        let mut c = Self::from_fn(vertices.len(), |a, b| {
            self.blue.get(vertices[a], vertices[b])
        })?;
        if let Some(l) = &self.labels {
            c.labels = Some(vertices.iter().map(|&v| l[v].clone()).collect());
        }
        Ok(c)
    }

    /// Number of walks of length exactly `k` from `i` to `j` using edges of
    /// `color`, i.e. the `(i, j)` entry of the `k`-th power of that color's
    /// adjacency matrix. Exact; overflowing `u64` is an error.
    pub fn path_count(&self, color: Color, k: usize, i: usize, j: usize) -> Result<u64> {
        let n = self.n();
        for v in [i, j] {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        if k == 0 {
            return Err(Error::InvalidInput("path length must be at least 1".into()));
        }
        let adj = self.adjacency(color);
        let mut walks = vec![0u64; n];
        walks[i] = 1;
        let mut next = vec![0u64; n];
        for _ in 0..k {
            next.iter_mut().for_each(|x| *x = 0);
            for (u, &w) in walks.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                for v in bits::ones(adj.row(u)) {
                    next[v] = next[v]
                        .checked_add(w)
                        .ok_or(Error::Overflow("counting walks"))?;
                }
            }
            std::mem::swap(&mut walks, &mut next);
        }
        Ok(walks[j])
    }
}

pub(crate) fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}
