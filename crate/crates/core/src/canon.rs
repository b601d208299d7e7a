//! Canonical forms of small r-graphs.
//!
//! The canonical form of `G` is the numerically smallest mask among all
//! relabelings `phi(G)`, `phi` in `S_n`. Two graphs are isomorphic exactly
//! when their canonical forms coincide.
//!
//! Both search strategies assign images from the top vertex `n` downwards,
//! because the most significant mask bits belong to edges through the
//! highest vertices:
//!
//! * graphs (`r = 2`) use an ordered partition of the unassigned vertices.
//!   Once a vertex takes position `p`, placing its neighbours at the low
//!   end of every cell minimises the row of edges `{j, p}`, so the row is
//!   fully determined and candidates with a larger row are discarded.
//! * other uniformities run a plain branch-and-bound over assignments,
//!   comparing the longest fully determined top segment of the image mask
//!   with the best leaf so far.
//!
//! Both prune sibling branches related by a vertex transposition that is
//! an automorphism of `G` (swapping two such vertices maps one subtree
//! onto the other).

use std::cmp::Ordering;

use dashmap::DashMap;
use rayon::prelude::*;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{degree_sequence, RGraph};
use crate::mask::Mask;
use crate::space::EdgeSpace;

/// Largest edge count for which [`CanonCache::precomputed`] builds a dense
/// table over every mask.
pub const MAX_DENSE_EDGES: usize = 20;

const MAXN: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonForm(pub Mask);

impl CanonForm {
    pub fn mask(&self) -> Mask {
        self.0
    }

    pub fn to_hex(&self, space: &EdgeSpace) -> String {
        self.0.to_hex(space.edge_count())
    }
}

/// Per-space data shared by all canonical-form computations.
struct Canonizer {
    space: EdgeSpace,
    /// For `q = 0..n`: the lowest rank of the contiguous top block of ranks
    /// whose edges use only vertices `>= q` (0-based).
    top_block: Vec<usize>,
}

impl Canonizer {
    fn new(space: &EdgeSpace) -> Canonizer {
        let n = space.n();
        let e = space.edge_count();
        let top_block = (0..n)
            .map(|q| {
                let low = (1u64 << q) - 1;
                let mut t = e;
                while t > 0 && space.edge_vertex_bits(t - 1) & low == 0 {
                    t -= 1;
                }
                t
            })
            .collect();
        Canonizer {
            space: space.clone(),
            top_block,
        }
    }

    fn canon(&self, g: &Mask) -> Mask {
        if self.space.r() == 2 {
            Mask::from_u64(canon_graph(&self.space, g))
        } else {
            canon_general(self, g)
        }
    }
}

// ---------------------------------------------------------------------------
// r = 2: ordered-partition search

struct GraphSearch {
    n: usize,
    adj: [u64; MAXN],
    best: Option<u64>,
}

#[inline]
fn row_offset(p: usize) -> u32 {
    (p * p.saturating_sub(1) / 2) as u32
}

fn canon_graph(space: &EdgeSpace, g: &Mask) -> u64 {
    let n = space.n();
    debug_assert!(n <= 11, "graphs on more than 11 vertices exceed one word");
    let mut adj = [0u64; MAXN];
    for i in g.ones() {
        let bits = space.edge_vertex_bits(i);
        let a = bits.trailing_zeros() as usize;
        let b = 63 - bits.leading_zeros() as usize;
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let mut seq = [0u8; MAXN];
    for (i, s) in seq.iter_mut().enumerate().take(n) {
        *s = i as u8;
    }
    let cell_lo = [0u8; MAXN];
    let mut search = GraphSearch { n, adj, best: None };
    search.node(&seq, &cell_lo, n - 1, 0);
    search.best.expect("search reaches at least one leaf")
}

impl GraphSearch {
    /// `seq[pos]` is the vertex tentatively at 0-based position `pos`;
    /// `cell_lo[pos]` is the first position of the cell containing `pos`.
    /// Positions above `p` are final.
    fn node(&mut self, seq: &[u8; MAXN], cell_lo: &[u8; MAXN], p: usize, cur: u64) {
        if p == 0 {
            if self.best.is_none_or(|b| cur < b) {
                self.best = Some(cur);
            }
            return;
        }
        let top_lo = cell_lo[p] as usize;

        // vertex sets of the cells strictly below the top cell
        let mut cells: [(u8, u8, u64); MAXN] = [(0, 0, 0); MAXN];
        let mut ncells = 0;
        let mut pos = top_lo;
        while pos > 0 {
            let b = pos - 1;
            let a = cell_lo[b] as usize;
            let mut bits = 0u64;
            for &v in &seq[a..=b] {
                bits |= 1 << v;
            }
            cells[ncells] = (a as u8, b as u8, bits);
            ncells += 1;
            pos = a;
        }
        let mut top_bits = 0u64;
        for &v in &seq[top_lo..=p] {
            top_bits |= 1 << v;
        }

        let row_of = |u: u8| -> u64 {
            let au = self.adj[u as usize];
            let mut row = 0u64;
            let k = (au & top_bits & !(1 << u)).count_ones();
            row |= ((1u64 << k) - 1) << top_lo;
            for &(a, _, bits) in &cells[..ncells] {
                let k = (au & bits).count_ones();
                row |= ((1u64 << k) - 1) << a;
            }
            row
        };

        let mut rows = [0u64; MAXN];
        let mut min_row = u64::MAX;
        for ci in top_lo..=p {
            let row = row_of(seq[ci]);
            rows[ci] = row;
            min_row = min_row.min(row);
        }

        let off = row_offset(p);
        let next = cur | (min_row << off);
        if let Some(best) = self.best {
            if (next >> off) > (best >> off) {
                return;
            }
        }

        let mut tried = 0u64;
        for ci in top_lo..=p {
            if rows[ci] != min_row {
                continue;
            }
            let u = seq[ci];
            let twin_of_tried = (0..self.n).any(|v| {
                tried >> v & 1 == 1
                    && (self.adj[u as usize] & !(1 << v)) == (self.adj[v] & !(1u64 << u))
            });
            if twin_of_tried {
                continue;
            }
            tried |= 1 << u;

            // move u to position p, keep the rest of the top cell in order
            let mut child = *seq;
            let mut w = top_lo;
            for &v in &seq[top_lo..=p] {
                if v != u {
                    child[w] = v;
                    w += 1;
                }
            }
            child[p] = u;
            let mut child_lo = *cell_lo;
            child_lo[p] = p as u8;

            // split every cell below p: neighbours of u low, the rest high
            let au = self.adj[u as usize];
            let mut pos = p;
            while pos > 0 {
                let b = pos - 1;
                let a = child_lo[b] as usize;
                let mut buf = [0u8; MAXN];
                let mut k = 0;
                for &v in &child[a..=b] {
                    if au >> v & 1 == 1 {
                        buf[k] = v;
                        k += 1;
                    }
                }
                let mut t = k;
                for &v in &child[a..=b] {
                    if au >> v & 1 == 0 {
                        buf[t] = v;
                        t += 1;
                    }
                }
                child[a..=b].copy_from_slice(&buf[..=b - a]);
                if k > 0 && k <= b - a {
                    for l in &mut child_lo[a + k..=b] {
                        *l = (a + k) as u8;
                    }
                }
                pos = a;
            }
            self.node(&child, &child_lo, p - 1, next);
        }
    }
}

// ---------------------------------------------------------------------------
// general r: branch-and-bound over assignments

struct GeneralSearch<'a> {
    canonizer: &'a Canonizer,
    n: usize,
    /// Edges of G through each vertex, as vertex bitmasks.
    incident: Vec<Vec<u64>>,
    /// `aut_swap[u]` has bit `v` iff the transposition `(u v)` fixes G.
    aut_swap: Vec<u64>,
    pos_of: [u8; MAXN],
    assigned: u64,
    img: Mask,
    best: Option<Mask>,
}

fn canon_general(canonizer: &Canonizer, g: &Mask) -> Mask {
    let space = &canonizer.space;
    let n = space.n();
    let mut incident = vec![Vec::new(); n];
    for i in g.ones() {
        let bits = space.edge_vertex_bits(i);
        let mut b = bits;
        while b != 0 {
            incident[b.trailing_zeros() as usize].push(bits);
            b &= b - 1;
        }
    }
    let mut aut_swap = vec![0u64; n];
    for u in 0..n {
        for v in u + 1..n {
            let swapped = Mask::from_indices(g.ones().map(|i| {
                let bits = space.edge_vertex_bits(i);
                let (bu, bv) = (bits >> u & 1, bits >> v & 1);
                if bu == bv {
                    i
                } else {
                    space.rank_bits(bits ^ (1 << u) ^ (1 << v))
                }
            }));
            if swapped == *g {
                aut_swap[u] |= 1 << v;
                aut_swap[v] |= 1 << u;
            }
        }
    }
    let mut search = GeneralSearch {
        canonizer,
        n,
        incident,
        aut_swap,
        pos_of: [0; MAXN],
        assigned: 0,
        img: Mask::EMPTY,
        best: None,
    };
    search.dfs(0);
    search.best.expect("search reaches at least one leaf")
}

impl GeneralSearch<'_> {
    fn dfs(&mut self, depth: usize) {
        if depth == self.n {
            if self.best.is_none_or(|b| self.img < b) {
                self.best = Some(self.img);
            }
            return;
        }
        let pos = self.n - 1 - depth;
        let mut tried = 0u64;
        for u in 0..self.n {
            if self.assigned >> u & 1 == 1 || self.aut_swap[u] & tried != 0 {
                continue;
            }
            tried |= 1 << u;
            self.pos_of[u] = pos as u8;
            self.assigned |= 1 << u;
            let mut added = [0usize; 256];
            let mut nadded = 0;
            for &e in &self.incident[u] {
                if e & !self.assigned == 0 {
                    let mut img_bits = 0u64;
                    let mut b = e;
                    while b != 0 {
                        img_bits |= 1 << self.pos_of[b.trailing_zeros() as usize];
                        b &= b - 1;
                    }
                    let rank = self.canonizer.space.rank_bits(img_bits);
                    self.img.set(rank);
                    added[nadded] = rank;
                    nadded += 1;
                }
            }
            let from = self.canonizer.top_block[pos];
            let keep_going = match self.best {
                Some(best) => self.img.cmp_from(&best, from) != Ordering::Greater,
                None => true,
            };
            if keep_going {
                self.dfs(depth + 1);
            }
            for &rank in &added[..nadded] {
                self.img.clear(rank);
            }
            self.assigned &= !(1 << u);
        }
    }
}

// ---------------------------------------------------------------------------
// cache

/// Memoised canonical forms for one edge space. Lookups take shared
/// access; concurrent computation of the same key is allowed and yields
/// identical values.
pub struct CanonCache {
    canonizer: Canonizer,
    dense: Option<Vec<Mask>>,
    map: DashMap<Mask, Mask>,
}

impl std::fmt::Debug for CanonCache {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CanonCache")
            .field("space", &self.canonizer.space)
            .field("dense", &self.is_dense())
            .field("entries", &self.len())
            .finish()
    }
}

impl CanonCache {
    /// Empty cache filled on demand.
    pub fn new(space: &EdgeSpace, caps: &Caps) -> Result<CanonCache> {
        if space.n() > caps.canon_max_n || space.n() > MAXN {
            return Err(Error::capacity(format!(
                "canonical forms on n={} exceed the cap n <= {}",
                space.n(),
                caps.canon_max_n.min(MAXN)
            )));
        }
        Ok(CanonCache {
            canonizer: Canonizer::new(space),
            dense: None,
            map: DashMap::new(),
        })
    }

    /// Cache with every one of the `2^C(n,r)` masks computed up front.
    pub fn precomputed(space: &EdgeSpace, caps: &Caps) -> Result<CanonCache> {
        let mut cache = CanonCache::new(space, caps)?;
        let e = space.edge_count();
        if e > MAX_DENSE_EDGES {
            return Err(Error::capacity(format!(
                "dense canonical table needs 2^{e} entries; limit is 2^{MAX_DENSE_EDGES}"
            )));
        }
        let canonizer = &cache.canonizer;
        let table: Vec<Mask> = (0..1u64 << e)
            .into_par_iter()
            .map(|m| canonizer.canon(&Mask::from_u64(m)))
            .collect();
        cache.dense = Some(table);
        Ok(cache)
    }

    pub fn space(&self) -> &EdgeSpace {
        &self.canonizer.space
    }

    pub fn is_dense(&self) -> bool {
        self.dense.is_some()
    }

    /// Number of memoised entries.
    pub fn len(&self) -> usize {
        self.dense.as_ref().map_or(0, Vec::len) + self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Canonical form of a raw mask from this space.
    pub fn canon_mask(&self, m: &Mask) -> Mask {
        if let Some(dense) = &self.dense {
            return dense[m.low_word() as usize];
        }
        if let Some(hit) = self.map.get(m) {
            return *hit;
        }
        let c = self.canonizer.canon(m);
        self.map.insert(*m, c);
        c
    }

    /// Canonical form computed without touching the cache.
    pub fn compute_uncached(&self, m: &Mask) -> Mask {
        self.canonizer.canon(m)
    }
}

pub fn canon(g: &RGraph, cache: &CanonCache) -> Result<CanonForm> {
    cache.space().check_same(g.space())?;
    Ok(CanonForm(cache.canon_mask(&g.mask())))
}

pub fn are_isomorphic(g1: &RGraph, g2: &RGraph, cache: &CanonCache) -> Result<bool> {
    g1.space().check_same(g2.space())?;
    cache.space().check_same(g1.space())?;
    Ok(masks_isomorphic(cache, &g1.mask(), &g2.mask()))
}

pub(crate) fn masks_isomorphic(cache: &CanonCache, a: &Mask, b: &Mask) -> bool {
    if a == b {
        return true;
    }
    if !prefilter_masks(cache.space(), a, b) {
        return false;
    }
    cache.canon_mask(a) == cache.canon_mask(b)
}

/// Necessary condition for isomorphism: equal edge counts and equal
/// sorted degree sequences. `false` means provably non-isomorphic.
pub fn prefilter(g1: &RGraph, g2: &RGraph) -> Result<bool> {
    g1.space().check_same(g2.space())?;
    Ok(prefilter_masks(g1.space(), &g1.mask(), &g2.mask()))
}

pub(crate) fn prefilter_masks(space: &EdgeSpace, a: &Mask, b: &Mask) -> bool {
    a.count() == b.count() && degree_sequence(space, a) == degree_sequence(space, b)
}
