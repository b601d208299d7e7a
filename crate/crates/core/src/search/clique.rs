//! Bitset branch-and-bound for maximum cliques with greedy colouring
//! bounds. Vertices are renumbered by a degeneracy order (ties broken by
//! original index, which is mask order) so that the run is deterministic.

use std::time::{Duration, Instant};

use super::compat::CompatGraph;

pub(crate) struct CliqueOutcome {
    /// Original vertex indices, ascending.
    pub clique: Vec<usize>,
    pub exact: bool,
    pub nodes: u64,
}

struct Solver {
    words: usize,
    adj: Vec<u64>,
    best: Vec<usize>,
    nodes: u64,
    deadline: Option<Instant>,
    aborted: bool,
}

#[inline]
fn bit(set: &[u64], v: usize) -> bool {
    set[v / 64] >> (v % 64) & 1 == 1
}

#[inline]
fn unset(set: &mut [u64], v: usize) {
    set[v / 64] &= !(1 << (v % 64));
}

fn first_one(set: &[u64]) -> Option<usize> {
    set.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Smallest-last order: repeatedly remove a vertex of minimum remaining
/// degree. Returned in reverse removal order (dense core first).
fn degeneracy_order(cg: &CompatGraph) -> Vec<usize> {
    let n = cg.len();
    let mut deg: Vec<usize> = (0..n).map(|i| cg.degree(i)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertex left");
        removed[v] = true;
        order.push(v);
        for (u, d) in deg.iter_mut().enumerate() {
            if !removed[u] && cg.adjacent(v, u) {
                *d -= 1;
            }
        }
    }
    order.reverse();
    order
}

impl Solver {
    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Greedy sequential colouring of `p`; vertices come out by ascending
    /// colour.
    fn colour(&self, p: &[u64]) -> Vec<(usize, usize)> {
        let mut q = p.to_vec();
        let mut out = Vec::new();
        let mut colour = 0;
        while q.iter().any(|&w| w != 0) {
            colour += 1;
            let mut r = q.clone();
            while let Some(v) = first_one(&r) {
                unset(&mut r, v);
                unset(&mut q, v);
                for (rw, aw) in r.iter_mut().zip(self.row(v)) {
                    *rw &= !aw;
                }
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut p: Vec<u64>) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.aborted = true;
                }
            }
        }
        if self.aborted {
            return;
        }
        let coloured = self.colour(&p);
        for &(v, colour) in coloured.iter().rev() {
            if clique.len() + colour <= self.best.len() || self.aborted {
                return;
            }
            clique.push(v);
            let next: Vec<u64> = p.iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            unset(&mut p, v);
        }
    }
}

pub(crate) fn max_clique_indices(
    cg: &CompatGraph,
    budget: Option<Duration>,
    seed: &[usize],
) -> CliqueOutcome {
    let n = cg.len();
    if n == 0 {
        return CliqueOutcome {
            clique: vec![],
            exact: true,
            nodes: 0,
        };
    }
    let order = degeneracy_order(cg);
    let mut pos = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let words = n.div_ceil(64);
    let mut adj = vec![0u64; n * words];
    for (new, &old) in order.iter().enumerate() {
        let row = cg.row(old);
        for (u, p) in pos.iter().enumerate() {
            if bit(row, u) {
                adj[new * words + p / 64] |= 1 << (p % 64);
            }
        }
    }
    let mut solver = Solver {
        words,
        adj,
        best: seed.iter().map(|&v| pos[v]).collect(),
        nodes: 0,
        deadline: budget.map(|b| Instant::now() + b),
        aborted: false,
    };
    if solver.best.is_empty() {
        solver.best = vec![0];
    }
    let mut all = vec![0u64; words];
    for v in 0..n {
        all[v / 64] |= 1 << (v % 64);
    }
    solver.expand(&mut Vec::new(), all);
    let mut clique: Vec<usize> = solver.best.iter().map(|&v| order[v]).collect();
    clique.sort_unstable();
    CliqueOutcome {
        clique,
        exact: !solver.aborted,
        nodes: solver.nodes,
    }
}
