//! The ranked edge space `binom([n], r)`.
//!
//! Edges are ranked colexicographically: `{s_1 < ... < s_r}` has rank
//! `sum_i C(s_i - 1, i)`. Colex rank does not depend on `n`, so a mask
//! written for `[n]` still means the same edges on any larger vertex set.

use std::fmt;
use std::sync::Arc;

use crate::binom::{binom, MAX_BINOM_N};
use crate::error::{Error, Result};
use crate::mask::{Mask, MAX_EDGES};

/// An edge: strictly increasing 1-based vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(Vec<usize>);

impl Edge {
    pub fn new(mut vertices: Vec<usize>) -> Result<Edge> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!(
                "edge {vertices:?} repeats a vertex"
            )));
        }
        if vertices.first() == Some(&0) {
            return Err(Error::invalid("vertices are 1-based; 0 is not a vertex"));
        }
        Ok(Edge(vertices))
    }

    /// Construct without sorting; fails unless `vertices` is already
    /// strictly increasing.
    pub fn from_sorted(vertices: &[usize]) -> Result<Edge> {
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!(
                "edge {vertices:?} is not strictly increasing"
            )));
        }
        Edge::new(vertices.to_vec())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug)]
struct Tables {
    /// Vertex set of each edge as a bitmask, bit `v - 1` for vertex `v`.
    edge_vertices: Vec<u64>,
    /// Edges incident to each vertex (index `v - 1`).
    incidence: Vec<Mask>,
    full: Mask,
}

/// `binom([n], r)` with precomputed incidence tables. Cloning is cheap;
/// equality compares `(n, r)` only.
#[derive(Clone)]
pub struct EdgeSpace {
    n: usize,
    r: usize,
    edge_count: usize,
    tables: Arc<Tables>,
}

impl EdgeSpace {
    pub fn new(n: usize, r: usize) -> Result<EdgeSpace> {
        if r == 0 || r > n {
            return Err(Error::invalid(format!(
                "uniformity must satisfy 1 <= r <= n, got n={n}, r={r}"
            )));
        }
        if n > MAX_BINOM_N {
            return Err(Error::capacity(format!(
                "n={n} exceeds the supported maximum {MAX_BINOM_N}"
            )));
        }
        let count = binom(n, r);
        if count > MAX_EDGES as u64 {
            return Err(Error::capacity(format!(
                "C({n},{r}) = {count} edges exceeds the {MAX_EDGES}-edge mask width"
            )));
        }
        let edge_count = count as usize;

        let mut edge_vertices = Vec::with_capacity(edge_count);
        let mut incidence = vec![Mask::EMPTY; n];
        // Colex enumeration: next r-subset of [n] as a vertex bitmask
        // (Gosper's hack visits subsets in increasing integer order, which
        // is exactly colex order).
        let mut set: u64 = if r == 64 { u64::MAX } else { (1u64 << r) - 1 };
        for rank in 0..edge_count {
            edge_vertices.push(set);
            let mut bits = set;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                incidence[v].set(rank);
                bits &= bits - 1;
            }
            if rank + 1 < edge_count {
                let c = set & set.wrapping_neg();
                let ripple = set + c;
                set = (((ripple ^ set) >> 2) / c) | ripple;
            }
        }
        Ok(EdgeSpace {
            n,
            r,
            edge_count,
            tables: Arc::new(Tables {
                edge_vertices,
                incidence,
                full: Mask::low_ones(edge_count),
            }),
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Mask with every edge present.
    #[inline]
    pub fn full_mask(&self) -> Mask {
        self.tables.full
    }

    /// Vertex set of the edge with this rank as a bitmask (bit `v - 1`).
    #[inline]
    pub fn edge_vertex_bits(&self, rank: usize) -> u64 {
        self.tables.edge_vertices[rank]
    }

    /// Edges incident to vertex `v` (1-based).
    #[inline]
    pub fn incidence(&self, v: usize) -> &Mask {
        &self.tables.incidence[v - 1]
    }

    /// Colex rank of an `r`-subset given as a vertex bitmask.
    #[inline]
    pub fn rank_bits(&self, mut bits: u64) -> usize {
        let mut rank = 0u64;
        let mut i = 1;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize; // vertex v+1, so C(v, i)
            rank += binom(v, i);
            i += 1;
            bits &= bits - 1;
        }
        rank as usize
    }

    pub fn rank(&self, e: &Edge) -> Result<usize> {
        if e.len() != self.r {
            return Err(Error::invalid(format!(
                "edge {e} has {} vertices, expected r={}",
                e.len(),
                self.r
            )));
        }
        let mut bits = 0u64;
        for &v in e.vertices() {
            if v == 0 || v > self.n {
                return Err(Error::invalid(format!(
                    "vertex {v} of edge {e} outside [1, {}]",
                    self.n
                )));
            }
            bits |= 1u64 << (v - 1);
        }
        Ok(self.rank_bits(bits))
    }

    /// Rank of the edge given as a vertex list; sorts and validates.
    pub fn rank_of(&self, vertices: &[usize]) -> Result<usize> {
        self.rank(&Edge::new(vertices.to_vec())?)
    }

    pub fn unrank(&self, index: usize) -> Result<Edge> {
        if index >= self.edge_count {
            return Err(Error::OutOfRange {
                index,
                count: self.edge_count,
            });
        }
        let mut bits = self.tables.edge_vertices[index];
        let mut vs = Vec::with_capacity(self.r);
        while bits != 0 {
            vs.push(bits.trailing_zeros() as usize + 1);
            bits &= bits - 1;
        }
        Ok(Edge(vs))
    }

    /// All edges in rank order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.edge_count).map(move |i| self.unrank(i).expect("rank in range"))
    }

    pub fn check_same(&self, other: &EdgeSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                left_n: self.n,
                left_r: self.r,
                right_n: other.n,
                right_r: other.r,
            })
        }
    }
}

impl PartialEq for EdgeSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r
    }
}

impl Eq for EdgeSpace {}

impl fmt::Debug for EdgeSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EdgeSpace")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("edge_count", &self.edge_count)
            .finish()
    }
}
