use rayon::prelude::*;

use crate::canon::{masks_isomorphic, CanonCache};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::space::EdgeSpace;

/// Graphs over one edge space, adjacent when their two differences are
/// isomorphic. Difference-isomorphic families are exactly its cliques.
#[derive(Clone, Debug)]
pub struct CompatGraph {
    space: EdgeSpace,
    masks: Vec<Mask>,
    words: usize,
    rows: Vec<u64>,
}

impl CompatGraph {
    pub fn space(&self) -> &EdgeSpace {
        &self.space
    }

    pub fn vertex_masks(&self) -> &[Mask] {
        &self.masks
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|i| self.degree(i)).sum::<usize>() / 2
    }
}

/// Compatibility graph on all `2^C(n,r)` graphs of `space`; vertex `i` is
/// the graph with mask `i`.
pub fn build_compat(space: &EdgeSpace, cache: &CanonCache, caps: &Caps) -> Result<CompatGraph> {
    let e = space.edge_count();
    if e > caps.compat_vertex_bits as usize {
        return Err(Error::capacity(format!(
            "compatibility graph on 2^{e} vertices exceeds the cap 2^{}",
            caps.compat_vertex_bits
        )));
    }
    let masks = (0..1u64 << e).map(Mask::from_u64).collect();
    build_compat_from(space, masks, cache, caps)
}

/// Compatibility graph on a chosen list of distinct graphs, in list order.
pub fn build_compat_from(
    space: &EdgeSpace,
    masks: Vec<Mask>,
    cache: &CanonCache,
    caps: &Caps,
) -> Result<CompatGraph> {
    cache.space().check_same(space)?;
    if masks.len() as u128 > 1u128 << caps.compat_vertex_bits {
        return Err(Error::capacity(format!(
            "compatibility graph on {} vertices exceeds the cap 2^{}",
            masks.len(),
            caps.compat_vertex_bits
        )));
    }
    let k = masks.len();
    let words = k.div_ceil(64).max(1);
    let rows: Vec<u64> = (0..k)
        .into_par_iter()
        .flat_map_iter(|i| {
            let a = masks[i];
            let ca = a.count();
            let mut row = vec![0u64; words];
            for (j, b) in masks.iter().enumerate() {
                // differences of graphs with unequal sizes have unequal sizes
                if j != i
                    && b.count() == ca
                    && masks_isomorphic(cache, &a.and_not(b), &b.and_not(&a))
                {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();
    Ok(CompatGraph {
        space: space.clone(),
        masks,
        words,
        rows,
    })
}
