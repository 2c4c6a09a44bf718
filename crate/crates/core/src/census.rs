//! Exact monochromatic subgraph censuses.
//!
//! Clique counts run over degree-ordered forward neighborhoods stored as bit
//! rows: each clique is reached once, from its lowest-ranked vertex, and the
//! last level is a popcount of a row intersection. The outer loop is split
//! across the rayon pool; the reduction is an integer sum, so results do not
//! depend on the thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{self, BitMatrix};
use crate::bounds::binomial;
use crate::coloring::{Color, TwoColoring};
use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleCensus {
    pub n: u64,
    pub total: u64,
    pub red_triangles: u64,
    pub blue_triangles: u64,
    pub mono: u64,
    /// `mono / total`; 1 when `total == 0`.
    pub mono_fraction: f64,
}

impl TriangleCensus {
    pub fn red_fraction(&self) -> f64 {
        fraction(self.red_triangles, self.total, 0.0)
    }

    pub fn blue_fraction(&self) -> f64 {
        fraction(self.blue_triangles, self.total, 0.0)
    }

    pub fn count(&self, color: Color) -> u64 {
        match color {
            Color::Red => self.red_triangles,
            Color::Blue => self.blue_triangles,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliqueCensus {
    pub m: u32,
    pub n: u64,
    pub total: u64,
    pub red_count: u64,
    pub blue_count: u64,
    pub mono: u64,
    pub mono_fraction: f64,
}

impl CliqueCensus {
    pub fn red_fraction(&self) -> f64 {
        fraction(self.red_count, self.total, 0.0)
    }

    pub fn blue_fraction(&self) -> f64 {
        fraction(self.blue_count, self.total, 0.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitivityReport {
    /// Monochromatic paths of length two, `C(n,3) + 2 * mono`.
    pub mono_paths2: u64,
    /// Share of those paths whose closing edge has the same color.
    pub completion_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxClique {
    pub color: Color,
    pub size: usize,
    /// Lexicographically smallest maximum clique when `exact`; otherwise
    /// the best clique found before the budget ran out.
    pub witness: Vec<usize>,
    /// False when the node budget was exhausted and `size` is only a lower
    /// bound.
    pub exact: bool,
    pub nodes: u64,
}

fn fraction(num: u64, den: u64, empty: f64) -> f64 {
    if den == 0 {
        empty
    } else {
        num as f64 / den as f64
    }
}

/// Forward adjacency under the ordering by ascending degree (ties by index).
/// Row `a` holds the neighbors ranked after `a`.
fn forward_rows(adj: &BitMatrix) -> BitMatrix {
    let n = adj.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (adj.row_count(v), v));
    let mut rank = vec![0usize; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    let mut fwd = BitMatrix::zeros(n);
    for (a, &v) in order.iter().enumerate() {
        for u in bits::ones(adj.row(v)) {
            if rank[u] > a {
                fwd.set(a, rank[u]);
            }
        }
    }
    fwd
}

fn count_extensions(
    fwd: &BitMatrix,
    cand: &[u64],
    remaining: usize,
    scratch: &mut [Vec<u64>],
) -> u64 {
    if remaining == 1 {
        return bits::popcount(cand) as u64;
    }
    let (buf, rest) = scratch.split_first_mut().expect("scratch depth");
    let mut total = 0;
    for b in bits::ones(cand) {
        if remaining == 2 {
            total += bits::and_count(cand, fwd.row(b)) as u64;
        } else {
            bits::and_into(buf, cand, fwd.row(b));
            if bits::popcount(buf) + 1 >= remaining {
                total += count_extensions(fwd, buf, remaining - 1, rest);
            }
        }
    }
    total
}

/// Number of `m`-cliques in the graph given by `adj`.
pub fn count_cliques(adj: &BitMatrix, m: usize) -> u64 {
    let n = adj.n();
    if m == 0 || n < m {
        return if m == 0 { 1 } else { 0 };
    }
    if m == 1 {
        return n as u64;
    }
    let fwd = forward_rows(adj);
    (0..n)
        .into_par_iter()
        .map_init(
            || vec![vec![0u64; fwd.words()]; m],
            |scratch, a| count_extensions(&fwd, fwd.row(a), m - 1, scratch),
        )
        .sum()
}

pub fn triangle_census(coloring: &TwoColoring) -> TriangleCensus {
    let n = coloring.n() as u64;
    let total = binomial(n, 3).unwrap() as u64;
    let red = count_cliques(&coloring.adjacency(Color::Red), 3);
    let blue = count_cliques(&coloring.adjacency(Color::Blue), 3);
    let mono = red + blue;
    TriangleCensus {
        n,
        total,
        red_triangles: red,
        blue_triangles: blue,
        mono,
        mono_fraction: fraction(mono, total, 1.0),
    }
}

/// Triangles of `color` through each vertex (half the diagonal of the cubed
/// adjacency matrix).
pub fn per_vertex_triangles(coloring: &TwoColoring, color: Color) -> Vec<u64> {
    let adj = coloring.adjacency(color);
    (0..adj.n())
        .into_par_iter()
        .map(|v| {
            let row = adj.row(v);
            let twice: u64 = bits::ones(row)
                .map(|u| bits::and_count(row, adj.row(u)) as u64)
                .sum();
            twice / 2
        })
        .collect()
}

pub fn clique_census(coloring: &TwoColoring, m: u32) -> Result<CliqueCensus> {
    if !(3..=5).contains(&m) {
        return Err(Error::UnsupportedOrder(m as usize));
    }
    let n = coloring.n() as u64;
    let total = binomial(n, m as u64).unwrap() as u64;
    let red = count_cliques(&coloring.adjacency(Color::Red), m as usize);
    let blue = count_cliques(&coloring.adjacency(Color::Blue), m as usize);
    Ok(CliqueCensus {
        m,
        n,
        total,
        red_count: red,
        blue_count: blue,
        mono: red + blue,
        mono_fraction: fraction(red + blue, total, 1.0),
    })
}

/// Path-completion ratio `3f / (C(n,3) + 2f)` from a triangle census. Every
/// monochromatic triangle holds three monochromatic 2-paths and every other
/// triangle holds exactly one, so no path enumeration is needed.
pub fn transitivity_from_census(census: &TriangleCensus) -> TransitivityReport {
    let paths = census.total + 2 * census.mono;
    TransitivityReport {
        mono_paths2: paths,
        completion_ratio: fraction(3 * census.mono, paths, 1.0),
    }
}

pub fn transitivity(coloring: &TwoColoring) -> TransitivityReport {
    transitivity_from_census(&triangle_census(coloring))
}

pub fn neighborhood_density(coloring: &TwoColoring, v: usize, color: Color) -> Result<f64> {
    let n = coloring.n();
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    let adj = coloring.adjacency(color);
    let row = adj.row(v);
    let degree = bits::popcount(row);
    if degree < 2 {
        return Err(Error::UndefinedDensity { vertex: v, degree });
    }
    let twice: u64 = bits::ones(row)
        .map(|u| bits::and_count(row, adj.row(u)) as u64)
        .sum();
    let pairs = (degree * (degree - 1) / 2) as f64;
    Ok((twice / 2) as f64 / pairs)
}

pub fn max_clique(coloring: &TwoColoring, color: Color) -> MaxClique {
    max_clique_with_budget(coloring, color, DEFAULT_NODE_BUDGET)
}

/// Exact maximum clique by branch and bound with a greedy-coloring bound.
///
/// A first pass finds the clique number. A second pass builds the
/// lexicographically smallest witness vertex by vertex, each step a decision
/// search for a clique of the remaining size above the chosen vertex.
pub fn max_clique_with_budget(coloring: &TwoColoring, color: Color, budget: u64) -> MaxClique {
    let found = crate::clique::solve(&coloring.adjacency(color), budget);
    MaxClique {
        color,
        size: found.size,
        witness: found.witness,
        exact: found.exact,
        nodes: found.nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star_with_isolated() -> TwoColoring {
        TwoColoring::from_blue_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap()
    }

    fn blue_five_cycle() -> TwoColoring {
        TwoColoring::from_blue_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn star_example_triangles() {
        let c = triangle_census(&star_with_isolated());
        assert_eq!(c.blue_triangles, 0);
        assert_eq!(c.red_triangles, 10);
        assert_eq!(c.total, 20);
    }

    #[test]
    fn monochromatic_graphs() {
        let c = triangle_census(&TwoColoring::all_red(6).unwrap());
        assert_eq!(
            (c.red_triangles, c.blue_triangles, c.mono_fraction),
            (20, 0, 1.0)
        );
        let k = clique_census(&TwoColoring::all_blue(6).unwrap(), 4).unwrap();
        assert_eq!((k.blue_count, k.mono_fraction), (15, 1.0));
    }

    #[test]
    fn tiny_graphs_are_vacuously_mono() {
        for n in 1..3 {
            let c = triangle_census(&TwoColoring::all_red(n).unwrap());
            assert_eq!((c.total, c.mono, c.mono_fraction), (0, 0, 1.0));
        }
    }

    #[test]
    fn per_vertex_examples() {
        let k4 = TwoColoring::all_blue(4).unwrap();
        assert_eq!(per_vertex_triangles(&k4, Color::Blue), vec![3, 3, 3, 3]);
        let star = star_with_isolated();
        assert_eq!(per_vertex_triangles(&star, Color::Blue)[0], 0);
        // vertex 0 has a single red neighbor (5)
        assert_eq!(per_vertex_triangles(&star, Color::Red)[0], 0);
    }

    #[test]
    fn unsupported_orders() {
        let c = TwoColoring::all_red(8).unwrap();
        assert!(matches!(
            clique_census(&c, 2),
            Err(Error::UnsupportedOrder(2))
        ));
        assert!(matches!(
            clique_census(&c, 6),
            Err(Error::UnsupportedOrder(6))
        ));
    }

    #[test]
    fn transitivity_examples() {
        let t = transitivity(&TwoColoring::all_blue(7).unwrap());
        assert_eq!(t.completion_ratio, 1.0);
        let c5 = blue_five_cycle();
        assert_eq!(triangle_census(&c5).mono, 0);
        let t = transitivity(&c5);
        assert_eq!((t.completion_ratio, t.mono_paths2), (0.0, 10));
    }

    #[test]
    fn max_clique_examples() {
        let k7 = TwoColoring::all_blue(7).unwrap();
        let mc = max_clique(&k7, Color::Blue);
        assert_eq!((mc.size, mc.exact), (7, true));
        assert_eq!(mc.witness, (0..7).collect::<Vec<_>>());
        let c5 = blue_five_cycle();
        let mc = max_clique(&c5, Color::Blue);
        assert_eq!(mc.size, 2);
        assert_eq!(mc.witness, vec![0, 1]);
        let mc = max_clique(&c5, Color::Red);
        assert_eq!(mc.witness, vec![0, 2]);
    }

    #[test]
    fn max_clique_budget_abort() {
        let c = crate::ingest::random_coloring(40, 0.7, 1).unwrap();
        let mc = max_clique_with_budget(&c, Color::Blue, 3);
        assert!(!mc.exact);
        assert!(mc.nodes >= 3);
    }

    #[test]
    fn density_examples() {
        let star = star_with_isolated();
        assert_eq!(neighborhood_density(&star, 0, Color::Blue).unwrap(), 0.0);
        let kb = TwoColoring::all_blue(6).unwrap();
        assert_eq!(neighborhood_density(&kb, 2, Color::Blue).unwrap(), 1.0);
        let tri_pendant =
            TwoColoring::from_blue_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let d = neighborhood_density(&tri_pendant, 0, Color::Blue).unwrap();
        assert!((d - 1.0 / 3.0).abs() < 1e-15);
        assert!(matches!(
            neighborhood_density(&star, 1, Color::Blue),
            Err(Error::UndefinedDensity {
                vertex: 1,
                degree: 1
            })
        ));
    }

    #[test]
    fn clique_counting_across_word_boundaries() {
        let k = TwoColoring::all_blue(70).unwrap();
        assert_eq!(
            count_cliques(&k.adjacency(Color::Blue), 5),
            binomial(70, 5).unwrap() as u64
        );
        assert_eq!(count_cliques(&k.adjacency(Color::Red), 3), 0);
    }
}
