//! Difference-isomorphic families of r-uniform hypergraphs.
//!
//! A family of r-graphs on `[n]` is *difference-isomorphic* when, for every
//! two members `G1, G2`, the graphs `G1 \ G2` and `G2 \ G1` are isomorphic.
//! This crate constructs such families, verifies them with exact canonical
//! forms, searches for maximum ones, and sweeps the finite inequalities
//! that govern their size.
//!
//! ```
//! use diffiso::{constructions, canon::CanonCache, family, Caps};
//!
//! let caps = Caps::default();
//! let (fam, psi) = constructions::extremal_family(6, 2, &caps).unwrap();
//! assert_eq!(fam.len(), 64);
//! let cache = CanonCache::new(fam.space(), &caps).unwrap();
//! assert!(family::is_difference_isomorphic(&fam, &cache).unwrap().ok);
//! assert!(family::is_psi_clique(&fam, &psi).unwrap());
//! ```

pub mod binom;
pub mod canon;
pub mod caps;
pub mod constructions;
pub mod error;
pub mod family;
pub mod graph;
pub mod lemmalab;
pub mod mask;
pub mod perm;
pub mod relation;
pub mod search;
pub mod space;

pub use canon::{CanonCache, CanonForm};
pub use caps::Caps;
pub use error::{Error, Result};
pub use family::{Family, VerifyReport};
pub use graph::{apply_perm, induce_edge_perm, EdgePerm, RGraph};
pub use mask::Mask;
pub use perm::Perm;
pub use relation::{ChoosablePair, CyclePartition, ExceptionalParams};
pub use search::{CompatGraph, SearchResult};
pub use space::{Edge, EdgeSpace};

/// Version string embedded in every JSON artifact.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
