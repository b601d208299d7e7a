//! The arrow relation `G ->phi H`, choosable pairs, cycle partitions of
//! involutions, and the closed forms built on them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::binom::{binom, checked_binom};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::{EdgePerm, RGraph};
use crate::mask::Mask;
use crate::perm::Perm;
use crate::space::EdgeSpace;

/// An edge `e` of `G` whose image `f = phi(e)` is missing from `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChoosablePair {
    pub e_rank: usize,
    pub f_rank: usize,
}

pub(crate) fn choosable_in(g: &Mask, ep: &EdgePerm) -> Vec<ChoosablePair> {
    g.ones()
        .filter_map(|e| {
            let f = ep.image(e);
            (!g.get(f)).then_some(ChoosablePair {
                e_rank: e,
                f_rank: f,
            })
        })
        .collect()
}

/// Choosable pairs of `G` under `phi`, by ascending `e_rank`.
pub fn choosable_pairs(g: &RGraph, ep: &EdgePerm) -> Result<Vec<ChoosablePair>> {
    ep.check_space(g.space())?;
    Ok(choosable_in(&g.mask(), ep))
}

pub(crate) fn arrow_masks(g: &Mask, h: &Mask, ep: &EdgePerm) -> bool {
    ep.apply_mask(&g.and_not(h)) == h.and_not(g)
}

/// `phi(G \ H) = H \ G`.
pub fn arrow(g: &RGraph, h: &RGraph, ep: &EdgePerm) -> Result<bool> {
    g.space().check_same(h.space())?;
    ep.check_space(g.space())?;
    Ok(arrow_masks(&g.mask(), &h.mask(), ep))
}

/// The arrow relation decided through choosable pairs: `H` agrees with `G`
/// off the pairs and holds exactly one edge of every pair.
pub fn arrow_via_pairs(g: &RGraph, h: &RGraph, ep: &EdgePerm) -> Result<bool> {
    g.space().check_same(h.space())?;
    ep.check_space(g.space())?;
    let (gm, hm) = (g.mask(), h.mask());
    let pairs = choosable_in(&gm, ep);
    let touched = Mask::from_indices(pairs.iter().flat_map(|p| [p.e_rank, p.f_rank]));
    let outside_equal = gm.and_not(&touched) == hm.and_not(&touched);
    Ok(outside_equal && pairs.iter().all(|p| hm.get(p.e_rank) != hm.get(p.f_rank)))
}

pub(crate) fn neighborhood_masks(g: &Mask, pairs: &[ChoosablePair]) -> Vec<Mask> {
    let m = pairs.len();
    (0..1u64 << m)
        .map(|counter| {
            let mut h = *g;
            for (k, p) in pairs.iter().enumerate() {
                if counter >> k & 1 == 1 {
                    h.clear(p.e_rank);
                    h.set(p.f_rank);
                }
            }
            h
        })
        .collect()
}

/// `N_phi(G) = {H : G ->phi H}`. Member `k` swaps the pairs whose index is
/// a set bit of `k`, so `G` comes first.
pub fn neighborhood(g: &RGraph, ep: &EdgePerm, caps: &Caps) -> Result<Family> {
    let pairs = choosable_pairs(g, ep)?;
    caps.check_enum("neighbourhood", 1u128 << pairs.len())?;
    Ok(Family::from_distinct(
        g.space(),
        neighborhood_masks(&g.mask(), &pairs),
    ))
}

/// Ordered pairs of `X` related by `->psi`, the diagonal included.
pub fn e_psi(x: &Family, ep: &EdgePerm) -> Result<u64> {
    ep.check_space(x.space())?;
    Ok(e_psi_masks(x.members(), ep))
}

pub(crate) fn e_psi_masks(members: &[Mask], ep: &EdgePerm) -> u64 {
    if ep.source().is_involution() {
        // an equivalence relation whose classes are keyed by (G & psiG, G | psiG)
        let mut classes: HashMap<(Mask, Mask), u64> = HashMap::new();
        for m in members {
            let img = ep.apply_mask(m);
            *classes.entry((m.and(&img), m.or(&img))).or_default() += 1;
        }
        classes.values().map(|c| c * c).sum()
    } else {
        members
            .iter()
            .map(|a| members.iter().filter(|b| arrow_masks(a, b, ep)).count() as u64)
            .sum()
    }
}

/// Fixed edges and edge 2-cycles of an involution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclePartition {
    pub c1: Vec<usize>,
    /// Pairs `(e, f)` with `e < f`, sorted by `e`.
    pub c2: Vec<(usize, usize)>,
}

pub fn cycle_partition(space: &EdgeSpace, psi: &Perm) -> Result<CyclePartition> {
    if !psi.is_involution() {
        return Err(Error::NotInvolution(psi.to_string()));
    }
    let ep = EdgePerm::induce(space, psi)?;
    Ok(cycle_partition_of(&ep))
}

pub(crate) fn cycle_partition_of(ep: &EdgePerm) -> CyclePartition {
    let mut c1 = Vec::new();
    let mut c2 = Vec::new();
    for (e, &f) in ep.table().iter().enumerate() {
        let f = f as usize;
        if f == e {
            c1.push(e);
        } else if e < f {
            c2.push((e, f));
        }
    }
    CyclePartition { c1, c2 }
}

/// Maximum of `|C2(psi)|` over involutions of `S_n`:
/// `C(n,r)/2` for odd `r` and even `n`, otherwise
/// `(C(n,r) - C(n/2, r/2)) / 2` with floors.
pub fn f_r(n: usize, r: usize) -> Result<u64> {
    if r == 0 || r > n {
        return Err(Error::invalid(format!(
            "f_r(n) needs 1 <= r <= n, got n={n}, r={r}"
        )));
    }
    let total = checked_binom(n, r)?;
    let twice = if r % 2 == 1 && n.is_multiple_of(2) {
        total
    } else {
        total - binom(n / 2, r / 2)
    };
    assert!(twice % 2 == 0, "odd numerator for f_{r}({n})");
    Ok(twice / 2)
}

/// Number of edges fixed by an involution with `a` fixed points and `b`
/// 2-cycles: `sum over i = r (mod 2), i <= a, of C(a,i) C(b,(r-i)/2)`.
pub fn c1_size_formula(a: usize, b: usize, r: usize) -> u64 {
    (r % 2..=a.min(r))
        .step_by(2)
        .map(|i| binom(a, i) * binom(b, (r - i) / 2))
        .sum()
}

/// Choosable pairs of `(G, phi)` that are also 2-cycles of `psi~`.
pub fn good_choosable_pairs(
    g: &RGraph,
    ep_phi: &EdgePerm,
    ep_psi: &EdgePerm,
) -> Result<Vec<ChoosablePair>> {
    ep_psi.check_space(g.space())?;
    let pairs = choosable_pairs(g, ep_phi)?;
    Ok(good_in(&pairs, ep_psi))
}

pub(crate) fn good_in(pairs: &[ChoosablePair], ep_psi: &EdgePerm) -> Vec<ChoosablePair> {
    pairs
        .iter()
        .copied()
        .filter(|p| ep_psi.image(p.e_rank) == p.f_rank && ep_psi.image(p.f_rank) == p.e_rank)
        .collect()
}

/// `4^m_g * 3.9^(m - m_g)`.
pub fn lemma32_bound(m: u32, m_g: u32) -> f64 {
    assert!(m_g <= m, "m_g={m_g} exceeds m={m}");
    4f64.powi(m_g as i32) * 3.9f64.powi((m - m_g) as i32)
}

/// Natural log of [`lemma32_bound`].
pub fn lemma32_ln_bound(m: u32, m_g: u32) -> f64 {
    assert!(m_g <= m, "m_g={m_g} exceeds m={m}");
    m_g as f64 * 4f64.ln() + (m - m_g) as f64 * 3.9f64.ln()
}

/// The unspecified absolute constant in the exceptional-pair thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExceptionalParams {
    pub c: f64,
}

impl ExceptionalParams {
    pub fn new(c: f64) -> Result<ExceptionalParams> {
        if c > 0.0 && c.is_finite() {
            Ok(ExceptionalParams { c })
        } else {
            Err(Error::invalid(format!(
                "exceptional constant c must be positive, got {c}"
            )))
        }
    }
}

impl Default for ExceptionalParams {
    fn default() -> Self {
        ExceptionalParams { c: 1.0 }
    }
}

/// 2-cycles `{x, y}` common to `phi` and `psi`.
pub fn shared_two_cycles(phi: &Perm, psi: &Perm) -> usize {
    psi.two_cycles()
        .into_iter()
        .filter(|&(x, y)| phi.apply(x) == y && phi.apply(y) == x)
        .count()
}

/// The near-involution structure of `(phi, psi)`:
/// 1. `psi` is an involution with at most `2c sqrt(n)` fixed points;
/// 2. `phi` and `psi` share at least `n/2 - c sqrt(n)` 2-cycles and have the
///    same fixed points;
/// 3. every 2-cycle `xy` of `psi` has `phi(x) = y` or `phi(y) = x`.
pub fn is_exceptional(phi: &Perm, psi: &Perm, params: &ExceptionalParams) -> bool {
    if phi.n() != psi.n() || !psi.is_involution() {
        return false;
    }
    let n = psi.n() as f64;
    let slack = params.c * n.sqrt();
    let fixed = psi.fixed_points();
    (fixed.len() as f64) <= 2.0 * slack
        && shared_two_cycles(phi, psi) as f64 >= n / 2.0 - slack
        && fixed == phi.fixed_points()
        && psi
            .two_cycles()
            .into_iter()
            .all(|(x, y)| phi.apply(x) == y || phi.apply(y) == x)
}
