//! Shared inputs for the benchmarks.

use diffiso::{EdgeSpace, Mask};

/// Deterministic pseudo-random masks over `space` (splitmix64).
pub fn sample_masks(space: &EdgeSpace, count: usize, seed: u64) -> Vec<Mask> {
    let e = space.edge_count();
    let mut state = seed;
    (0..count)
        .map(|_| {
            let mut words = [0u64; 4];
            for w in words.iter_mut() {
                state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
                let mut z = state;
                z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
                *w = z ^ (z >> 31);
            }
            Mask::from_indices((0..e).filter(|&i| words[i / 64] >> (i % 64) & 1 == 1))
        })
        .collect()
}
