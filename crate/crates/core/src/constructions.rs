//! Generators for explicit difference-isomorphic families. Every generator
//! emits members in a fixed, documented order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::binom::checked_binom;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::{EdgePerm, RGraph};
use crate::mask::Mask;
use crate::perm::Perm;
use crate::relation::{cycle_partition_of, f_r};
use crate::space::EdgeSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    Extremal,
    Matchings,
    Stars,
    MiddleLayer,
    Layer,
    Appendix,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 6] = [
        ConstructionKind::Extremal,
        ConstructionKind::Matchings,
        ConstructionKind::Stars,
        ConstructionKind::MiddleLayer,
        ConstructionKind::Layer,
        ConstructionKind::Appendix,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::Extremal => "extremal",
            ConstructionKind::Matchings => "matchings",
            ConstructionKind::Stars => "stars",
            ConstructionKind::MiddleLayer => "middle-layer",
            ConstructionKind::Layer => "layer",
            ConstructionKind::Appendix => "appendix",
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown construction {s:?}")))
    }
}

/// A generator request. `n` is ignored by `middle-layer` (always `r + 1`);
/// `r` is ignored by `matchings` and `stars` (always 2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub kind: ConstructionKind,
    pub n: usize,
    pub r: usize,
    /// Number of stars.
    pub k: Option<usize>,
    /// Edge count for `layer`.
    pub m: Option<usize>,
}

/// A generated family plus the permutations that certify it, when the
/// construction has them.
#[derive(Clone, Debug)]
pub struct Construction {
    pub family: Family,
    pub psi: Option<Perm>,
    pub phi: Option<Perm>,
    pub g0: Option<RGraph>,
}

impl ConstructionSpec {
    pub fn build(&self, caps: &Caps) -> Result<Construction> {
        let plain = |family| Construction {
            family,
            psi: None,
            phi: None,
            g0: None,
        };
        let need = |v: Option<usize>, name: &str| {
            v.ok_or_else(|| {
                Error::invalid(format!("construction {} needs parameter {name}", self.kind))
            })
        };
        Ok(match self.kind {
            ConstructionKind::Extremal => {
                let (family, psi) = extremal_family(self.n, self.r, caps)?;
                Construction {
                    family,
                    psi: Some(psi),
                    phi: None,
                    g0: None,
                }
            }
            ConstructionKind::Matchings => plain(perfect_matchings_family(self.n, caps)?),
            ConstructionKind::Stars => plain(star_family(self.n, need(self.k, "k")?, caps)?),
            ConstructionKind::MiddleLayer => plain(middle_layer_family(self.r, caps)?),
            ConstructionKind::Layer => {
                plain(layer_family(self.n, self.r, need(self.m, "m")?, caps)?)
            }
            ConstructionKind::Appendix => {
                let a = appendix_family(self.n, self.r, caps)?;
                Construction {
                    family: a.family,
                    psi: Some(a.psi),
                    phi: Some(a.phi),
                    g0: Some(a.g0),
                }
            }
        })
    }
}

/// `(1 2)(3 4)...`, with a fixed point at `n` when `n` is odd.
pub fn standard_involution(n: usize) -> Perm {
    involution_on_prefix(n, n / 2)
}

fn involution_on_prefix(n: usize, pairs: usize) -> Perm {
    let images = (1..=n)
        .map(|v| match v {
            v if v > 2 * pairs => v,
            v if v % 2 == 1 => v + 1,
            v => v - 1,
        })
        .collect::<Vec<_>>();
    Perm::from_images(&images).expect("valid involution")
}

fn counter_family(space: &EdgeSpace, base: Mask, pairs: &[(usize, usize)]) -> Vec<Mask> {
    (0..1u64 << pairs.len())
        .map(|counter| {
            let mut m = base;
            for (k, &(lo, hi)) in pairs.iter().enumerate() {
                m.set(if counter >> k & 1 == 0 { lo } else { hi });
            }
            m
        })
        .inspect(|m| debug_assert!(m.and_not(&space.full_mask()).is_empty()))
        .collect()
}

/// All graphs with exactly one edge from every 2-cycle of `psi~` and no
/// fixed edge, for `psi` = [`standard_involution`]. Member `k` takes the
/// larger-rank edge of pair `i` (pairs sorted by smaller rank) iff bit `i`
/// of `k` is set.
pub fn extremal_family(n: usize, r: usize, caps: &Caps) -> Result<(Family, Perm)> {
    let f = f_r(n, r)?;
    caps.check_enum(
        "extremal family",
        1u128.checked_shl(f as u32).unwrap_or(u128::MAX),
    )?;
    let space = EdgeSpace::new(n, r)?;
    let psi = standard_involution(n);
    let cp = cycle_partition_of(&EdgePerm::induce(&space, &psi)?);
    debug_assert_eq!(cp.c2.len() as u64, f);
    let members = counter_family(&space, Mask::EMPTY, &cp.c2);
    Ok((Family::from_distinct(&space, members), psi))
}

fn double_factorial_odd(n: usize) -> u128 {
    (1..n).step_by(2).map(|k| k as u128).product()
}

/// Perfect matchings of `K_n`: vertex 1 is matched first, partners in
/// increasing order, then recursively on what remains.
pub fn perfect_matchings_family(n: usize, caps: &Caps) -> Result<Family> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::invalid(format!(
            "perfect matchings need even n >= 2, got {n}"
        )));
    }
    caps.check_enum("perfect matchings", double_factorial_odd(n))?;
    let space = EdgeSpace::new(n, 2)?;
    let mut out = Vec::new();
    fn rec(space: &EdgeSpace, free: u64, acc: Mask, out: &mut Vec<Mask>) {
        if free == 0 {
            out.push(acc);
            return;
        }
        let a = free.trailing_zeros();
        let rest = free & !(1 << a);
        let mut it = rest;
        while it != 0 {
            let b = it.trailing_zeros();
            it &= it - 1;
            let mut next = acc;
            next.set(space.rank_bits(1 << a | 1 << b));
            rec(space, rest & !(1 << b), next, out);
        }
    }
    rec(&space, (1u64 << n) - 1, Mask::EMPTY, &mut out);
    Ok(Family::from_distinct(&space, out))
}

/// Lexicographic `size`-subsets of the set bits of `pool`.
fn subsets_of(pool: u64, size: usize) -> Vec<u64> {
    let items: Vec<u32> = (0..64).filter(|&i| pool >> i & 1 == 1).collect();
    let mut out = Vec::new();
    fn rec(items: &[u32], size: usize, start: usize, acc: u64, out: &mut Vec<u64>) {
        if size == 0 {
            out.push(acc);
            return;
        }
        for i in start..=items.len() - size {
            rec(items, size - 1, i + 1, acc | 1 << items[i], out);
        }
    }
    if size <= items.len() {
        rec(&items, size, 0, 0, &mut out);
    }
    out
}

/// `k` vertex-disjoint stars with centres `1..=k` and `n/k - 1` leaves each
/// from `{k+1..n}`. Centre 1 chooses its leaves first (lexicographically),
/// then centre 2 from the rest, and so on.
pub fn star_family(n: usize, k: usize, caps: &Caps) -> Result<Family> {
    if k == 0 || k > n || !n.is_multiple_of(k) {
        return Err(Error::invalid(format!(
            "star family needs k dividing n with 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let leaves = n / k - 1;
    let mut count: u128 = 1;
    let mut left = n - k;
    for _ in 0..k {
        count = count.saturating_mul(checked_binom(left, leaves)? as u128);
        left -= leaves;
    }
    caps.check_enum("star family", count)?;
    let space = EdgeSpace::new(n, 2)?;
    let mut out = Vec::new();
    fn rec(
        space: &EdgeSpace,
        centre: usize,
        k: usize,
        leaves: usize,
        free: u64,
        acc: Mask,
        out: &mut Vec<Mask>,
    ) {
        if centre == k {
            out.push(acc);
            return;
        }
        for s in subsets_of(free, leaves) {
            let mut next = acc;
            let mut it = s;
            while it != 0 {
                let l = it.trailing_zeros();
                it &= it - 1;
                next.set(space.rank_bits(1 << centre | 1 << l));
            }
            rec(space, centre + 1, k, leaves, free & !s, next, out);
        }
    }
    let b = ((1u64 << n) - 1) & !((1u64 << k) - 1);
    rec(&space, 0, k, leaves, b, Mask::EMPTY, &mut out);
    Ok(Family::from_distinct(&space, out))
}

/// All `r`-graphs on `[r+1]` with `floor((r+1)/2)` edges.
pub fn middle_layer_family(r: usize, caps: &Caps) -> Result<Family> {
    if r == 0 {
        return Err(Error::invalid("middle layer needs r >= 1"));
    }
    layer_family(r + 1, r, r.div_ceil(2), caps)
}

/// All `r`-graphs on `[n]` with exactly `m` edges, in increasing mask order.
pub fn layer_family(n: usize, r: usize, m: usize, caps: &Caps) -> Result<Family> {
    let space = EdgeSpace::new(n, r)?;
    let e = space.edge_count();
    if m > e {
        return Err(Error::invalid(format!(
            "layer m={m} exceeds the {e} edges of ({n},{r})"
        )));
    }
    caps.check_enum("layer family", layer_size(e, m))?;
    let mut out = Vec::new();
    let mut c: Vec<usize> = (0..m).collect();
    loop {
        out.push(Mask::from_indices(c.iter().copied()));
        // next combination in colex order, which is increasing mask order
        let Some(j) = (0..m).find(|&j| c[j] + 1 != if j + 1 < m { c[j + 1] } else { e }) else {
            break;
        };
        c[j] += 1;
        for (i, x) in c.iter_mut().enumerate().take(j) {
            *x = i;
        }
    }
    Ok(Family::from_distinct(&space, out))
}

fn layer_size(e: usize, m: usize) -> u128 {
    let m = m.min(e - m);
    let mut acc: u128 = 1;
    for i in 0..m {
        acc = acc * (e - i) as u128 / (i + 1) as u128;
        if acc > 1u128 << 100 {
            return u128::MAX;
        }
    }
    acc
}

/// A difference-isomorphic family that is not an involution clique.
#[derive(Clone, Debug)]
pub struct AppendixFamily {
    /// `G0` first, then the `psi`-clique `G'` in counter order.
    pub family: Family,
    pub psi: Perm,
    pub phi: Perm,
    pub g0: RGraph,
}

/// Builds `G' ∪ {G0}` from the involution `psi` fixing the top one or two
/// points and the permutation `phi` that is the 4-cycle `1->2->3->4->1` on
/// `{1..4}` and agrees with `psi` elsewhere.
///
/// Edges are classified by `k = |e ∩ {1,2,3,4}|`. On 2-cycles of `psi~`
/// with `k = 0` the members of `G'` range over both choices and `G0` takes
/// the smaller rank; on 2-cycles with `k = 1` everyone takes the edge
/// meeting `{1,3}`. Among edges with `k >= 2` only `e0` lies in `G0` and
/// only `f0 = phi(e0)` in members of `G'`. No other fixed edge is used.
pub fn appendix_family(n: usize, r: usize, caps: &Caps) -> Result<AppendixFamily> {
    if r < 2 || n < r + 4 {
        return Err(Error::Degenerate(format!(
            "appendix construction needs r >= 2 and n >= r + 4, got n={n}, r={r}"
        )));
    }
    let space = EdgeSpace::new(n, r)?;
    let psi = involution_on_prefix(n, (n - 1) / 2);
    let mut phi_images: Vec<usize> = (1..=n).map(|v| psi.apply(v)).collect();
    phi_images[..4].copy_from_slice(&[2, 3, 4, 1]);
    let phi = Perm::from_images(&phi_images)?;

    let e0: Vec<usize> = if r.is_multiple_of(2) {
        (3..=r + 2).collect()
    } else {
        (3..=r + 1).chain([n]).collect()
    };
    let e0 = space.rank_of(&e0)?;
    let phi_ep = EdgePerm::induce(&space, &phi)?;
    let psi_ep = EdgePerm::induce(&space, &psi)?;
    let f0 = phi_ep.image(e0);
    debug_assert_eq!(psi_ep.image(e0), e0);

    let low4 = 0b1111u64;
    let meets13 = 0b0101u64;
    let mut free = Vec::new();
    let mut forced = Mask::EMPTY;
    for (lo, hi) in cycle_partition_of(&psi_ep).c2 {
        let bits = space.edge_vertex_bits(lo);
        match (bits & low4).count_ones() {
            0 => free.push((lo, hi)),
            1 => forced.set(if bits & meets13 != 0 { lo } else { hi }),
            _ => {}
        }
    }
    if free.is_empty() {
        return Err(Error::Degenerate(format!(
            "appendix construction on n={n}, r={r} has no free 2-cycles, so |G'| = 1"
        )));
    }
    caps.check_enum("appendix family", (1u128 << free.len()) + 1)?;

    let mut g0 = forced;
    g0.set(e0);
    for &(lo, _) in &free {
        g0.set(lo);
    }
    let mut base = forced;
    base.set(f0);
    let mut members = vec![g0];
    members.extend(counter_family(&space, base, &free));
    Ok(AppendixFamily {
        family: Family::from_distinct(&space, members),
        psi,
        phi,
        g0: RGraph::from_mask_unchecked(&space, g0),
    })
}
