//! r-graphs as edge bitmasks and the action of vertex permutations on them.

use std::fmt;

use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::perm::Perm;
use crate::space::{Edge, EdgeSpace};

/// An r-uniform hypergraph on `[n]`: bit `i` set iff the edge of colex
/// rank `i` is present.
#[derive(Clone, PartialEq, Eq)]
pub struct RGraph {
    space: EdgeSpace,
    bits: Mask,
}

impl RGraph {
    pub fn new(space: &EdgeSpace, bits: Mask) -> Result<RGraph> {
        if !bits.and_not(&space.full_mask()).is_empty() {
            return Err(Error::invalid(format!(
                "mask {bits:?} has bits beyond the {} edges of (n={}, r={})",
                space.edge_count(),
                space.n(),
                space.r()
            )));
        }
        Ok(RGraph {
            space: space.clone(),
            bits,
        })
    }

    pub(crate) fn from_mask_unchecked(space: &EdgeSpace, bits: Mask) -> RGraph {
        debug_assert!(bits.and_not(&space.full_mask()).is_empty());
        RGraph {
            space: space.clone(),
            bits,
        }
    }

    pub fn empty(space: &EdgeSpace) -> RGraph {
        RGraph {
            space: space.clone(),
            bits: Mask::EMPTY,
        }
    }

    pub fn full(space: &EdgeSpace) -> RGraph {
        RGraph {
            space: space.clone(),
            bits: space.full_mask(),
        }
    }

    /// Graph from 1-based vertex lists, e.g. `&[&[1, 3], &[1, 4]]`.
    pub fn from_edges(space: &EdgeSpace, edges: &[&[usize]]) -> Result<RGraph> {
        let mut bits = Mask::EMPTY;
        for e in edges {
            bits.set(space.rank_of(e)?);
        }
        Ok(RGraph {
            space: space.clone(),
            bits,
        })
    }

    pub fn from_hex(space: &EdgeSpace, hex: &str) -> Result<RGraph> {
        Ok(RGraph {
            space: space.clone(),
            bits: Mask::from_hex(hex, space.edge_count())?,
        })
    }

    #[inline]
    pub fn space(&self) -> &EdgeSpace {
        &self.space
    }

    #[inline]
    pub fn mask(&self) -> Mask {
        self.bits
    }

    pub fn to_hex(&self) -> String {
        self.bits.to_hex(self.space.edge_count())
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains_rank(&self, rank: usize) -> bool {
        rank < self.space.edge_count() && self.bits.get(rank)
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.bits
            .ones()
            .map(|i| self.space.unrank(i).expect("rank inside space"))
            .collect()
    }

    fn binary(&self, other: &RGraph, f: impl Fn(&Mask, &Mask) -> Mask) -> Result<RGraph> {
        self.space.check_same(&other.space)?;
        Ok(RGraph {
            space: self.space.clone(),
            bits: f(&self.bits, &other.bits),
        })
    }

    /// `self \ other`.
    pub fn difference(&self, other: &RGraph) -> Result<RGraph> {
        self.binary(other, Mask::and_not)
    }

    pub fn symmetric_difference(&self, other: &RGraph) -> Result<RGraph> {
        self.binary(other, Mask::xor)
    }

    pub fn union(&self, other: &RGraph) -> Result<RGraph> {
        self.binary(other, Mask::or)
    }

    pub fn intersection(&self, other: &RGraph) -> Result<RGraph> {
        self.binary(other, Mask::and)
    }

    pub fn complement(&self) -> RGraph {
        RGraph {
            space: self.space.clone(),
            bits: self.space.full_mask().and_not(&self.bits),
        }
    }

    /// Number of edges containing `v` (1-based).
    pub fn vertex_degree(&self, v: usize) -> Result<usize> {
        if v == 0 || v > self.space.n() {
            return Err(Error::invalid(format!(
                "vertex {v} outside [1, {}]",
                self.space.n()
            )));
        }
        Ok(self.bits.and(self.space.incidence(v)).count())
    }

    /// Vertex degrees sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        degree_sequence(&self.space, &self.bits)
    }

    pub fn apply_perm(&self, ep: &EdgePerm) -> Result<RGraph> {
        ep.check_space(&self.space)?;
        Ok(RGraph {
            space: self.space.clone(),
            bits: ep.apply_mask(&self.bits),
        })
    }
}

pub(crate) fn degree_sequence(space: &EdgeSpace, bits: &Mask) -> Vec<usize> {
    let mut d: Vec<usize> = (1..=space.n())
        .map(|v| bits.and(space.incidence(v)).count())
        .collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

impl fmt::Debug for RGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RGraph(n={}, r={}, [", self.space.n(), self.space.r())?;
        for (i, e) in self.edges().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

/// The permutation `phi~` induced on edge ranks by a vertex permutation.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgePerm {
    source: Perm,
    n: usize,
    r: usize,
    table: Vec<u16>,
}

impl EdgePerm {
    pub fn induce(space: &EdgeSpace, p: &Perm) -> Result<EdgePerm> {
        if p.n() != space.n() {
            return Err(Error::invalid(format!(
                "permutation of degree {} on an edge space with n={}",
                p.n(),
                space.n()
            )));
        }
        let table = (0..space.edge_count())
            .map(|i| space.rank_bits(p.apply_bits(space.edge_vertex_bits(i))) as u16)
            .collect();
        Ok(EdgePerm {
            source: p.clone(),
            n: space.n(),
            r: space.r(),
            table,
        })
    }

    pub fn source(&self) -> &Perm {
        &self.source
    }

    pub fn table(&self) -> &[u16] {
        &self.table
    }

    #[inline]
    pub fn image(&self, rank: usize) -> usize {
        self.table[rank] as usize
    }

    pub fn check_space(&self, space: &EdgeSpace) -> Result<()> {
        if self.n == space.n() && self.r == space.r() {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                left_n: self.n,
                left_r: self.r,
                right_n: space.n(),
                right_r: space.r(),
            })
        }
    }

    /// Image of an edge set under `phi~`.
    #[inline]
    pub fn apply_mask(&self, bits: &Mask) -> Mask {
        let mut out = Mask::EMPTY;
        for i in bits.ones() {
            out.set(self.table[i] as usize);
        }
        out
    }

    /// `self ∘ other` on edges (apply `other` first).
    pub fn compose(&self, other: &EdgePerm) -> Result<EdgePerm> {
        if self.n != other.n || self.r != other.r {
            return Err(Error::SpaceMismatch {
                left_n: self.n,
                left_r: self.r,
                right_n: other.n,
                right_r: other.r,
            });
        }
        Ok(EdgePerm {
            source: self.source.compose(&other.source)?,
            n: self.n,
            r: self.r,
            table: other
                .table
                .iter()
                .map(|&j| self.table[j as usize])
                .collect(),
        })
    }

    pub fn inverse(&self) -> EdgePerm {
        let mut table = vec![0u16; self.table.len()];
        for (i, &j) in self.table.iter().enumerate() {
            table[j as usize] = i as u16;
        }
        EdgePerm {
            source: self.source.inverse(),
            n: self.n,
            r: self.r,
            table,
        }
    }
}

impl fmt::Debug for EdgePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgePerm({} on n={}, r={})", self.source, self.n, self.r)
    }
}

/// Free-function form of [`EdgePerm::induce`].
pub fn induce_edge_perm(space: &EdgeSpace, p: &Perm) -> Result<EdgePerm> {
    EdgePerm::induce(space, p)
}

pub fn apply_perm(g: &RGraph, ep: &EdgePerm) -> Result<RGraph> {
    g.apply_perm(ep)
}
