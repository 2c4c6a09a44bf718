//! Exact maximum clique search on bit rows.
//!
//! Branch and bound in the MCQ/MCS family. Vertices are relabelled so the
//! degeneracy core comes first, each node greedily colors its candidates,
//! and only vertices whose color exceeds the incumbent gap are branched on.
//! Before branching, a vertex that blocks exactly one member of an earlier
//! class is swapped in when that member fits elsewhere, and a vertex in the
//! first branching class is dropped when two classes cannot both extend it.

use crate::bits::{self, BitMatrix};

pub(crate) struct Found {
    pub size: usize,
    /// Original labels, ascending.
    pub witness: Vec<usize>,
    pub exact: bool,
    pub nodes: u64,
}

/// Maximum clique of `adj`, with the lexicographically smallest witness
/// when the budget allows.
pub(crate) fn solve(adj: &BitMatrix, budget: u64) -> Found {
    let n = adj.n();
    let words = adj.words();
    let (pos, label) = degeneracy_relabel(adj);
    let mut permuted = BitMatrix::zeros(n);
    for u in 0..n {
        for v in bits::ones(adj.row(u)) {
            permuted.set(pos[u], pos[v]);
        }
    }
    let mut search = Search {
        adj: &permuted,
        words,
        nodes: 0,
        budget,
        aborted: false,
        best: Vec::new(),
        goal: usize::MAX,
    };
    let mut all = vec![0u64; words];
    for v in 0..n {
        bits::insert(&mut all, v);
    }
    search.expand(&mut Vec::new(), all.clone());
    let size = search.best.len();
    let mut first: Vec<usize> = search.best.iter().map(|&p| label[p]).collect();
    first.sort_unstable();
    if search.aborted {
        return Found {
            size,
            witness: first,
            exact: false,
            nodes: search.nodes,
        };
    }

    // Smallest first vertex that starts a maximum clique, then the smallest
    // next one above it, and so on. Candidate sets are in original labels.
    let to_perm = |set: &[u64]| {
        let mut out = vec![0u64; words];
        for v in bits::ones(set) {
            bits::insert(&mut out, pos[v]);
        }
        out
    };
    let mut chosen = Vec::with_capacity(size);
    let mut cand = all;
    while chosen.len() < size && !search.aborted {
        let need = size - chosen.len() - 1;
        let mut picked = None;
        for v in bits::ones(&cand).collect::<Vec<_>>() {
            let mut sub = vec![0u64; words];
            bits::and_into(&mut sub, &cand, adj.row(v));
            bits::keep_above(&mut sub, v);
            if need == 0 || (bits::popcount(&sub) >= need && search.exists(to_perm(&sub), need)) {
                picked = Some((v, sub));
                break;
            }
            if search.aborted {
                break;
            }
        }
        match picked {
            Some((v, sub)) => {
                chosen.push(v);
                cand = sub;
            }
            None => break,
        }
    }
    // the first-pass clique is still maximum if the witness pass ran short
    let witness = if chosen.len() == size { chosen } else { first };
    Found {
        size,
        witness,
        exact: true,
        nodes: search.nodes,
    }
}

/// `(pos, label)`: new position of each vertex and its inverse. Repeatedly
/// removing a minimum-degree vertex and placing it last puts the densest
/// core at the front.
fn degeneracy_relabel(adj: &BitMatrix) -> (Vec<usize>, Vec<usize>) {
    let n = adj.n();
    let mut degree: Vec<usize> = (0..n).map(|v| adj.row_count(v)).collect();
    let mut removed = vec![false; n];
    let mut pos = vec![0; n];
    for slot in (0..n).rev() {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertex left");
        removed[v] = true;
        pos[v] = slot;
        for u in bits::ones(adj.row(v)) {
            if !removed[u] {
                degree[u] -= 1;
            }
        }
    }
    let mut label = vec![0; n];
    for v in 0..n {
        label[pos[v]] = v;
    }
    (pos, label)
}

fn first_one(row: &[u64]) -> Option<usize> {
    bits::ones(row).next()
}

struct Search<'a> {
    adj: &'a BitMatrix,
    words: usize,
    nodes: u64,
    budget: u64,
    aborted: bool,
    best: Vec<usize>,
    /// Stop as soon as `best` reaches this size.
    goal: usize,
}

impl Search<'_> {
    fn class<'c>(&self, classes: &'c [u64], i: usize) -> &'c [u64] {
        &classes[i * self.words..(i + 1) * self.words]
    }

    /// Greedily fills one color class from `uncolored`, removing its members.
    fn take_class(&self, uncolored: &mut [u64], class: &mut [u64]) {
        let mut avail = uncolored.to_vec();
        while let Some(v) = first_one(&avail) {
            bits::clear(&mut avail, v);
            bits::clear(uncolored, v);
            bits::insert(class, v);
            for (a, r) in avail.iter_mut().zip(self.adj.row(v)) {
                *a &= !r;
            }
        }
    }

    /// Puts `v` into one of the first `k` classes, moving its only conflict
    /// in that class to another class if needed.
    fn renumber(&self, v: usize, classes: &mut [u64], k: usize) -> bool {
        let w = self.words;
        let row = self.adj.row(v);
        for i in 0..k {
            let hits = bits::and_count(self.class(classes, i), row);
            if hits == 0 {
                bits::insert(&mut classes[i * w..(i + 1) * w], v);
                return true;
            }
            if hits != 1 {
                continue;
            }
            let mut only = vec![0u64; w];
            bits::and_into(&mut only, self.class(classes, i), row);
            let u = first_one(&only).expect("one conflict");
            let urow = self.adj.row(u);
            for j in (0..k).filter(|&j| j != i) {
                if bits::and_count(self.class(classes, j), urow) == 0 {
                    bits::clear(&mut classes[i * w..(i + 1) * w], u);
                    bits::insert(&mut classes[j * w..(j + 1) * w], u);
                    bits::insert(&mut classes[i * w..(i + 1) * w], v);
                    return true;
                }
            }
        }
        false
    }

    /// Whether no clique in `v` plus the first `k` classes has `k + 1`
    /// vertices: some class misses `v` entirely, or meets it in a single
    /// vertex `u` with another class holding no common neighbor of both.
    fn infra_prunable(&self, v: usize, classes: &[u64], k: usize) -> bool {
        let w = self.words;
        let row = self.adj.row(v);
        let mut only = vec![0u64; w];
        for i in 0..k {
            bits::and_into(&mut only, self.class(classes, i), row);
            match bits::popcount(&only) {
                0 => return true,
                1 => {
                    let u = first_one(&only).expect("one neighbor");
                    let urow = self.adj.row(u);
                    let blocked = (0..k).filter(|&j| j != i).any(|j| {
                        self.class(classes, j)
                            .iter()
                            .zip(row)
                            .zip(urow)
                            .all(|((c, a), b)| c & a & b == 0)
                    });
                    if blocked {
                        return true;
                    }
                }
                _ => {}
            }
        }
        false
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut cand: Vec<u64>) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        let w = self.words;
        let kmin = self.best.len().saturating_sub(clique.len());
        let mut uncolored = cand.clone();
        let mut classes = vec![0u64; kmin * w];
        for i in 0..kmin {
            if bits::is_empty(&uncolored) {
                // every candidate fits in fewer than kmin classes
                return;
            }
            let (_, rest) = classes.split_at_mut(i * w);
            self.take_class(&mut uncolored, &mut rest[..w]);
        }
        if bits::is_empty(&uncolored) {
            return;
        }
        if kmin > 0 {
            for v in bits::ones(&uncolored.clone()).collect::<Vec<_>>() {
                if self.renumber(v, &mut classes, kmin) {
                    bits::clear(&mut uncolored, v);
                }
            }
        }
        let mut branch: Vec<(usize, usize)> = Vec::new();
        let mut class_no = kmin;
        let mut scratch = vec![0u64; w];
        while !bits::is_empty(&uncolored) {
            class_no += 1;
            scratch.iter_mut().for_each(|x| *x = 0);
            self.take_class(&mut uncolored, &mut scratch);
            branch.extend(bits::ones(&scratch).map(|v| (v, class_no)));
        }
        if kmin > 0 {
            branch.retain(|&(v, c)| c != kmin + 1 || !self.infra_prunable(v, &classes, kmin));
        }

        for &(v, c) in branch.iter().rev() {
            if self.aborted || self.best.len() >= self.goal {
                return;
            }
            if clique.len() + c <= self.best.len() {
                return;
            }
            clique.push(v);
            let mut next = vec![0u64; w];
            bits::and_into(&mut next, &cand, self.adj.row(v));
            if bits::is_empty(&next) {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            bits::clear(&mut cand, v);
        }
    }

    /// Whether `cand` (relabelled) holds a clique of `need` vertices.
    fn exists(&mut self, cand: Vec<u64>, need: usize) -> bool {
        let saved_best = std::mem::replace(&mut self.best, vec![usize::MAX; need - 1]);
        let saved_goal = std::mem::replace(&mut self.goal, need);
        self.expand(&mut Vec::new(), cand);
        let found = self.best.len() >= need && !self.aborted;
        self.best = saved_best;
        self.goal = saved_goal;
        found
    }
}
