use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::Family;
use crate::canon::{masks_isomorphic, CanonCache};
use crate::error::Result;
use crate::mask::Mask;

/// The first failing pair `(i, j)`, `i < j`, with both differences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub diff_ij_hex: String,
    pub diff_ji_hex: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub witness: Option<Witness>,
    /// Pairs examined in index order up to and including the first failure.
    pub checked_pairs: u64,
    pub elapsed_ms: u64,
}

fn pair_ok(cache: &CanonCache, a: &Mask, b: &Mask) -> bool {
    masks_isomorphic(cache, &a.and_not(b), &b.and_not(a))
}

/// Checks every unordered pair of members. The reported failure is the
/// lexicographically first failing `(i, j)`, whatever the thread count.
pub fn is_difference_isomorphic(f: &Family, cache: &CanonCache) -> Result<VerifyReport> {
    cache.space().check_same(f.space())?;
    let start = Instant::now();
    let members = f.members();
    let k = members.len();

    let first_bad = (0..k).into_par_iter().find_map_first(|i| {
        let a = &members[i];
        (i + 1..k)
            .find(|&j| !pair_ok(cache, a, &members[j]))
            .map(|j| (i, j))
    });

    let total = (k as u64) * (k as u64).saturating_sub(1) / 2;
    let report = match first_bad {
        None => VerifyReport {
            ok: true,
            witness: None,
            checked_pairs: total,
            elapsed_ms: 0,
        },
        Some((i, j)) => {
            let (i64_, k64) = (i as u64, k as u64);
            // pairs (i', j') with i' < i, then (i, i+1..=j)
            let before = i64_ * k64 - i64_ * (i64_ + 1) / 2;
            let e = f.space().edge_count();
            let (a, b) = (members[i], members[j]);
            VerifyReport {
                ok: false,
                witness: Some(Witness {
                    i,
                    j,
                    diff_ij_hex: a.and_not(&b).to_hex(e),
                    diff_ji_hex: b.and_not(&a).to_hex(e),
                }),
                checked_pairs: before + (j - i) as u64,
                elapsed_ms: 0,
            }
        }
    };
    Ok(VerifyReport {
        elapsed_ms: start.elapsed().as_millis() as u64,
        ..report
    })
}
