//! Families of r-graphs: verification, involution-clique detection,
//! complement and edge-complement duality, and the JSON family file.

mod file;
mod verify;

use std::collections::HashSet;

use rayon::prelude::*;

pub use file::{read_family, write_family, FamilyFile, FAMILY_FORMAT};
pub use verify::{is_difference_isomorphic, VerifyReport, Witness};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{EdgePerm, RGraph};
use crate::mask::Mask;
use crate::perm::{involutions, Perm};
use crate::space::EdgeSpace;

/// An ordered, duplicate-free list of r-graphs over one edge space.
#[derive(Clone, PartialEq, Eq)]
pub struct Family {
    space: EdgeSpace,
    members: Vec<Mask>,
}

impl Family {
    pub fn new(space: &EdgeSpace, members: Vec<Mask>) -> Result<Family> {
        let full = space.full_mask();
        let mut seen = HashSet::with_capacity(members.len());
        for (i, m) in members.iter().enumerate() {
            if !m.and_not(&full).is_empty() {
                return Err(Error::invalid(format!(
                    "member {i} ({m:?}) has bits beyond the {} edges of the space",
                    space.edge_count()
                )));
            }
            if !seen.insert(*m) {
                return Err(Error::DuplicateMember {
                    index: i,
                    mask: m.to_hex(space.edge_count()),
                });
            }
        }
        Ok(Family {
            space: space.clone(),
            members,
        })
    }

    pub fn from_graphs(space: &EdgeSpace, graphs: &[RGraph]) -> Result<Family> {
        for g in graphs {
            space.check_same(g.space())?;
        }
        Family::new(space, graphs.iter().map(RGraph::mask).collect())
    }

    /// Callers guarantee distinct, in-range masks.
    pub(crate) fn from_distinct(space: &EdgeSpace, members: Vec<Mask>) -> Family {
        debug_assert!(Family::new(space, members.clone()).is_ok());
        Family {
            space: space.clone(),
            members,
        }
    }

    pub fn space(&self) -> &EdgeSpace {
        &self.space
    }

    pub fn members(&self) -> &[Mask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<RGraph> {
        self.members
            .get(i)
            .map(|&m| RGraph::from_mask_unchecked(&self.space, m))
    }

    pub fn graphs(&self) -> impl Iterator<Item = RGraph> + '_ {
        self.members
            .iter()
            .map(move |&m| RGraph::from_mask_unchecked(&self.space, m))
    }

    pub fn contains(&self, g: &RGraph) -> bool {
        g.space() == &self.space && self.members.contains(&g.mask())
    }

    /// The member masks as a set.
    pub fn mask_set(&self) -> HashSet<Mask> {
        self.members.iter().copied().collect()
    }

    /// Same members regardless of order.
    pub fn same_members(&self, other: &Family) -> bool {
        self.space == other.space
            && self.len() == other.len()
            && self.mask_set() == other.mask_set()
    }

    pub fn hex_members(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|m| m.to_hex(self.space.edge_count()))
            .collect()
    }

    /// Edge count shared by all members, if uniform.
    pub fn uniform_edge_count(&self) -> Option<usize> {
        let first = self.members.first()?.count();
        self.members
            .iter()
            .all(|m| m.count() == first)
            .then_some(first)
    }
}

impl std::fmt::Debug for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Family(n={}, r={}, {:?})",
            self.space.n(),
            self.space.r(),
            self.hex_members()
        )
    }
}

/// Memberwise complement `{G^c : G in F}`.
pub fn complement_family(f: &Family) -> Family {
    let full = f.space.full_mask();
    Family::from_distinct(
        &f.space,
        f.members.iter().map(|m| full.and_not(m)).collect(),
    )
}

/// Rank table of the edge-complement map `e -> [n] \ e` from `(n, r)` to
/// `(n, n - r)`.
pub fn dual_rank_table(space: &EdgeSpace) -> Result<(EdgeSpace, Vec<usize>)> {
    let n = space.n();
    if space.r() >= n {
        return Err(Error::invalid(format!(
            "edge complements of r={} sets on [{n}] are empty; no dual space",
            space.r()
        )));
    }
    let dual = EdgeSpace::new(n, n - space.r())?;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let table = (0..space.edge_count())
        .map(|i| dual.rank_bits(all & !space.edge_vertex_bits(i)))
        .collect();
    Ok((dual, table))
}

/// Map every graph through `e -> [n] \ e` into the `(n, n - r)` space.
pub fn dualize(f: &Family) -> Result<Family> {
    let (dual, table) = dual_rank_table(&f.space)?;
    let members = f
        .members
        .iter()
        .map(|m| Mask::from_indices(m.ones().map(|i| table[i])))
        .collect();
    Ok(Family::from_distinct(&dual, members))
}

/// Structural `psi`-clique test: all members agree on the fixed edges of
/// `psi~` and hold the same number of edges from every 2-cycle of `psi~`.
/// Both conditions together say that `(G & psi(G), G | psi(G))` is the
/// same for every member.
pub fn is_psi_clique(f: &Family, psi: &Perm) -> Result<bool> {
    if !psi.is_involution() {
        return Err(Error::NotInvolution(psi.to_string()));
    }
    let ep = EdgePerm::induce(&f.space, psi)?;
    Ok(psi_clique_with(&f.members, &ep))
}

fn psi_clique_with(members: &[Mask], ep: &EdgePerm) -> bool {
    let Some(first) = members.first() else {
        return true;
    };
    let key = |m: &Mask| {
        let img = ep.apply_mask(m);
        (m.and(&img), m.or(&img))
    };
    let k0 = key(first);
    members[1..].iter().all(|m| key(m) == k0)
}

/// First involution (in [`involutions`] order) under which `f` is a
/// `psi`-clique, or `None`.
pub fn find_involution_clique(f: &Family, caps: &Caps) -> Result<Option<Perm>> {
    let n = f.space.n();
    caps.check_involutions(n)?;
    let invs = involutions(n);
    let hit = invs.par_iter().position_first(|psi| {
        let ep = EdgePerm::induce(&f.space, psi).expect("degree matches");
        psi_clique_with(&f.members, &ep)
    });
    Ok(hit.map(|i| invs[i].clone()))
}
