//! Naive enumerations over a dense boolean matrix, sharing no code with
//! the library. Used by the oracle tests here and by the acceptance suite.

#![allow(dead_code)]

use ramstat_core::{Color, TwoColoring};

pub fn dense(c: &TwoColoring, color: Color) -> Vec<Vec<bool>> {
    let n = c.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && c.color(i, j) == Some(color))
                .collect()
        })
        .collect()
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|&v| mask >> v & 1 == 1).collect());
        }
    }
    out
}

pub fn is_clique(a: &[Vec<bool>], s: &[usize]) -> bool {
    s.iter()
        .enumerate()
        .all(|(x, &i)| s[x + 1..].iter().all(|&j| a[i][j]))
}

pub fn count_k(a: &[Vec<bool>], k: usize) -> u64 {
    subsets(a.len(), k)
        .iter()
        .filter(|s| is_clique(a, s))
        .count() as u64
}

pub fn trace_cube(a: &[Vec<bool>]) -> u64 {
    let n = a.len();
    let mut t = 0u64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if a[i][j] && a[j][k] && a[k][i] {
                    t += 1;
                }
            }
        }
    }
    t
}

pub fn per_vertex(a: &[Vec<bool>]) -> Vec<u64> {
    let n = a.len();
    (0..n)
        .map(|v| {
            let mut c = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if a[v][i] && a[v][j] && a[i][j] {
                        c += 1;
                    }
                }
            }
            c
        })
        .collect()
}

/// Monochromatic 2-paths (unordered endpoints, middle vertex fixed) and how
/// many of them close in the same color.
pub fn paths2(c: &TwoColoring) -> (u64, u64) {
    let n = c.n();
    let (mut paths, mut closed) = (0, 0);
    for mid in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if a == mid || b == mid {
                    continue;
                }
                let x = c.color(mid, a).unwrap();
                if c.color(mid, b).unwrap() == x {
                    paths += 1;
                    if c.color(a, b).unwrap() == x {
                        closed += 1;
                    }
                }
            }
        }
    }
    (paths, closed)
}

pub fn brute_max_clique(a: &[Vec<bool>]) -> (usize, Vec<usize>) {
    let n = a.len();
    for k in (1..=n).rev() {
        // subsets() yields masks in increasing order; take the
        // lexicographically smallest sorted vertex list among cliques
        let mut found: Vec<Vec<usize>> = subsets(n, k)
            .into_iter()
            .filter(|s| is_clique(a, s))
            .collect();
        if !found.is_empty() {
            found.sort();
            return (k, found.swap_remove(0));
        }
    }
    (0, Vec::new())
}
