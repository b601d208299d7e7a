//! Enumeration limits shared by every exhaustive routine.

use crate::error::{Error, Result};

/// Environment variable that overrides [`Caps::enum_bits`] and
/// [`Caps::compat_vertex_bits`]. Expert use only.
pub const CAP_ENV: &str = "DIFFISO_CAP_BITS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Families, neighbourhoods and layers may hold at most `2^enum_bits`
    /// members.
    pub enum_bits: u32,
    /// Compatibility graphs may have at most `2^compat_vertex_bits` vertices.
    pub compat_vertex_bits: u32,
    /// Largest `n` for which all involutions of `S_n` are enumerated.
    pub involution_max_n: usize,
    /// Largest `n` for which canonical forms are computed.
    pub canon_max_n: usize,
    /// Largest `n` for which all of `S_n` is enumerated in sweeps.
    pub perm_max_n: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enum_bits: 24,
            compat_vertex_bits: 15,
            involution_max_n: 12,
            canon_max_n: 10,
            perm_max_n: 8,
        }
    }
}

impl Caps {
    /// Defaults, with `DIFFISO_CAP_BITS` applied when set.
    pub fn from_env() -> Result<Caps> {
        let mut caps = Caps::default();
        if let Ok(v) = std::env::var(CAP_ENV) {
            let bits: u32 = v
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("{CAP_ENV}={v:?} is not an integer")))?;
            if bits > 40 {
                return Err(Error::invalid(format!(
                    "{CAP_ENV}={bits} is above the hard limit 40"
                )));
            }
            caps.enum_bits = bits;
            caps.compat_vertex_bits = bits.min(20);
        }
        Ok(caps)
    }

    pub fn enum_limit(&self) -> u128 {
        1u128 << self.enum_bits
    }

    pub fn check_enum(&self, what: &str, count: u128) -> Result<()> {
        if count > self.enum_limit() {
            Err(Error::capacity(format!(
                "{what}: {count} members exceeds the enumeration cap 2^{}",
                self.enum_bits
            )))
        } else {
            Ok(())
        }
    }

    /// Exhaustive sweeps may perform up to `2^(enum_bits + 8)` elementary
    /// checks.
    pub fn check_work(&self, what: &str, count: u128) -> Result<()> {
        let bits = self.enum_bits + 8;
        if count > 1u128 << bits {
            Err(Error::capacity(format!(
                "{what}: {count} checks exceeds the sweep cap 2^{bits}"
            )))
        } else {
            Ok(())
        }
    }

    pub fn check_involutions(&self, n: usize) -> Result<()> {
        if n > self.involution_max_n {
            Err(Error::capacity(format!(
                "involution enumeration on n={n} exceeds the cap n <= {}",
                self.involution_max_n
            )))
        } else {
            Ok(())
        }
    }

    pub fn check_perms(&self, n: usize) -> Result<()> {
        if n > self.perm_max_n {
            Err(Error::capacity(format!(
                "full S_{n} enumeration exceeds the cap n <= {}",
                self.perm_max_n
            )))
        } else {
            Ok(())
        }
    }
}
