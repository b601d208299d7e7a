//! Binomial coefficients from a Pascal triangle computed once per process.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest `n` for which `C(n, k)` is tabulated. `C(64, 32)` fits in a `u64`.
pub const MAX_BINOM_N: usize = 64;

type Table = [[u64; MAX_BINOM_N + 1]; MAX_BINOM_N + 1];

fn table() -> &'static Table {
    static TABLE: OnceLock<Box<Table>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; MAX_BINOM_N + 1]; MAX_BINOM_N + 1]);
        for n in 0..=MAX_BINOM_N {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1]
                    .checked_add(t[n - 1][k])
                    .expect("Pascal row 64 fits in u64");
            }
        }
        t
    })
}

/// `C(n, k)`, zero when `k > n`. Panics if `n > MAX_BINOM_N`; use
/// [`checked_binom`] for untrusted input.
#[inline]
pub fn binom(n: usize, k: usize) -> u64 {
    assert!(
        n <= MAX_BINOM_N,
        "binomial table holds n <= {MAX_BINOM_N}, got {n}"
    );
    if k > n {
        0
    } else {
        table()[n][k]
    }
}

pub fn checked_binom(n: usize, k: usize) -> Result<u64> {
    if n > MAX_BINOM_N {
        return Err(Error::capacity(format!(
            "binomial C({n}, {k}) beyond the tabulated range n <= {MAX_BINOM_N}"
        )));
    }
    Ok(binom(n, k))
}
