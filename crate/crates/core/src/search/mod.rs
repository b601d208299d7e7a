//! Exact and time-budgeted computation of the largest difference-isomorphic
//! family over a small edge space.

mod clique;
mod compat;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use compat::{build_compat, build_compat_from, CompatGraph};

use crate::canon::CanonCache;
use crate::caps::Caps;
use crate::constructions::extremal_family;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::mask::Mask;
use crate::space::EdgeSpace;

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// Members in ascending mask order.
    pub best_family: Family,
    pub size: usize,
    /// The search tree was exhausted, so `size` is the maximum.
    pub exact: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Wall-clock limit; `None` runs to completion.
    pub budget: Option<Duration>,
    /// Warm-start the incumbent with the extremal construction.
    pub seed_extremal: bool,
}

/// Maximum clique of `cg`. `seed`, when given, must be a clique of `cg`
/// and serves as the initial incumbent.
pub fn max_clique(
    cg: &CompatGraph,
    budget: Option<Duration>,
    seed: Option<&Family>,
) -> Result<SearchResult> {
    let start = Instant::now();
    let seed_idx = match seed {
        Some(f) => seed_indices(cg, f)?,
        None => Vec::new(),
    };
    let out = clique::max_clique_indices(cg, budget, &seed_idx);
    let members: Vec<Mask> = out.clique.iter().map(|&i| cg.vertex_masks()[i]).collect();
    let mut members = members;
    members.sort_unstable();
    let size = members.len();
    Ok(SearchResult {
        best_family: Family::from_distinct(cg.space(), members),
        size,
        exact: out.exact,
        nodes_explored: out.nodes,
        elapsed: start.elapsed(),
    })
}

fn seed_indices(cg: &CompatGraph, f: &Family) -> Result<Vec<usize>> {
    cg.space().check_same(f.space())?;
    let index: HashMap<Mask, usize> = cg
        .vertex_masks()
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();
    let idx = f
        .members()
        .iter()
        .map(|m| {
            index.get(m).copied().ok_or_else(|| {
                Error::invalid(format!(
                    "seed member {m:?} is not a vertex of the compatibility graph"
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for (a, &i) in idx.iter().enumerate() {
        if idx[a + 1..].iter().any(|&j| !cg.adjacent(i, j)) {
            return Err(Error::invalid(
                "seed family is not a clique of the compatibility graph",
            ));
        }
    }
    Ok(idx)
}

/// The extremal construction, used as a starting incumbent.
pub fn seeded_lower_bound(n: usize, r: usize, caps: &Caps) -> Result<Family> {
    Ok(extremal_family(n, r, caps)?.0)
}

/// Builds the full compatibility graph of `(n, r)` and searches it.
pub fn solve(n: usize, r: usize, opts: &SearchOptions, caps: &Caps) -> Result<SearchResult> {
    let space = EdgeSpace::new(n, r)?;
    if space.edge_count() > caps.compat_vertex_bits as usize {
        return Err(Error::capacity(format!(
            "search over 2^{} graphs exceeds the cap 2^{}",
            space.edge_count(),
            caps.compat_vertex_bits
        )));
    }
    let cache = CanonCache::precomputed(&space, caps)?;
    let cg = build_compat(&space, &cache, caps)?;
    let seed = if opts.seed_extremal {
        Some(seeded_lower_bound(n, r, caps)?)
    } else {
        None
    };
    max_clique(&cg, opts.budget, seed.as_ref())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub n: usize,
    pub r: usize,
    pub size_r: usize,
    pub exact_r: bool,
    pub size_dual: usize,
    pub exact_dual: bool,
    /// Present only when both searches are exact.
    pub matches: Option<bool>,
}

/// Solves `(n, r)` and `(n, n - r)` and compares the maxima.
pub fn duality_check(
    n: usize,
    r: usize,
    budget: Option<Duration>,
    caps: &Caps,
) -> Result<DualityReport> {
    if r == 0 || r >= n {
        return Err(Error::invalid(format!(
            "duality needs 1 <= r < n, got n={n}, r={r}"
        )));
    }
    let opts = SearchOptions {
        budget,
        seed_extremal: false,
    };
    let a = solve(n, r, &opts, caps)?;
    let b = solve(n, n - r, &opts, caps)?;
    Ok(DualityReport {
        n,
        r,
        size_r: a.size,
        exact_r: a.exact,
        size_dual: b.size,
        exact_dual: b.exact,
        matches: (a.exact && b.exact).then_some(a.size == b.size),
    })
}
