//! Versioned JSON family files.
//!
//! ```json
//! { "format": "diffiso-family/1", "tool_version": "0.1.0", "n": 4, "r": 2,
//!   "graphs": ["06", "0a", "05", "09"], "digest": "…", "meta": { … } }
//! ```
//!
//! Each graph is the lowercase hex of its edge mask: bit `i` is the edge of
//! colex rank `i`, read as an unsigned integer (least-significant bit first).
//! `digest` is the SHA-256 of the canonical text `format\nn\nr\nhex…`, one
//! graph per line. It is optional on input but checked when present.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::Family;
use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::space::EdgeSpace;

pub const FAMILY_FORMAT: &str = "diffiso-family/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub format: String,
    #[serde(default)]
    pub tool_version: Option<String>,
    pub n: usize,
    pub r: usize,
    pub graphs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub digest: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, Value>,
}

fn digest_of(n: usize, r: usize, graphs: &[String]) -> String {
    let mut h = Sha256::new();
    h.update(format!("{FAMILY_FORMAT}\n{n}\n{r}\n"));
    for g in graphs {
        h.update(g.as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl FamilyFile {
    pub fn from_family(f: &Family) -> FamilyFile {
        let graphs = f.hex_members();
        let (n, r) = (f.space().n(), f.space().r());
        FamilyFile {
            format: FAMILY_FORMAT.to_string(),
            tool_version: Some(env!("CARGO_PKG_VERSION").to_string()),
            n,
            r,
            digest: Some(digest_of(n, r, &graphs)),
            graphs,
            meta: BTreeMap::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: Value) -> FamilyFile {
        self.meta.insert(key.to_string(), value);
        self
    }

    /// Parses file text. Errors carry the 1-based line and column.
    pub fn parse(text: &str) -> Result<FamilyFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let mut s = if pretty {
            serde_json::to_string_pretty(self)
        } else {
            serde_json::to_string(self)
        }
        .expect("family files serialize");
        s.push('\n');
        s
    }

    /// Whether the stored digest matches the content; `None` when absent.
    pub fn digest_matches(&self) -> Option<bool> {
        self.digest
            .as_ref()
            .map(|d| d.eq_ignore_ascii_case(&digest_of(self.n, self.r, &self.graphs)))
    }

    /// Validates header, digest and members.
    pub fn to_family(&self) -> Result<Family> {
        if self.digest_matches() == Some(false) {
            return Err(Error::invalid(format!(
                "digest mismatch: file has {}, content hashes to {}",
                self.digest.as_deref().unwrap_or_default(),
                digest_of(self.n, self.r, &self.graphs)
            )));
        }
        self.members()
    }

    /// Validates header and members, ignoring the digest.
    pub fn members(&self) -> Result<Family> {
        if self.format != FAMILY_FORMAT {
            return Err(Error::invalid(format!(
                "unsupported format {:?}; expected {FAMILY_FORMAT:?}",
                self.format
            )));
        }
        let space = EdgeSpace::new(self.n, self.r)?;
        let members = self
            .graphs
            .iter()
            .enumerate()
            .map(|(i, h)| {
                Mask::from_hex(h, space.edge_count())
                    .map_err(|e| Error::invalid(format!("graph {i}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Family::new(&space, members)
    }
}

pub fn read_family(path: impl AsRef<Path>) -> Result<Family> {
    let text = fs::read_to_string(path)?;
    FamilyFile::parse(&text)?.to_family()
}

pub fn write_family(f: &Family, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, FamilyFile::from_family(f).to_json(true))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Family {
        let s = EdgeSpace::new(4, 2).unwrap();
        Family::new(
            &s,
            vec![
                Mask::from_u64(0x06),
                Mask::from_u64(0x0a),
                Mask::from_u64(0x05),
            ],
        )
        .unwrap()
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("f.json");
        let f = sample();
        write_family(&f, &p).unwrap();
        assert_eq!(read_family(&p).unwrap(), f);
    }

    #[test]
    fn hex_is_lowercase_and_padded() {
        let file = FamilyFile::from_family(&sample());
        assert_eq!(file.graphs, vec!["06", "0a", "05"]);
    }

    #[test]
    fn duplicate_member() {
        let text = r#"{"format":"diffiso-family/1","n":4,"r":2,"graphs":["03","03"]}"#;
        let err = FamilyFile::parse(text).unwrap().to_family().unwrap_err();
        assert!(matches!(err, Error::DuplicateMember { index: 1, .. }));
    }

    #[test]
    fn r_above_n() {
        let text = r#"{"format":"diffiso-family/1","n":3,"r":4,"graphs":[]}"#;
        assert!(matches!(
            FamilyFile::parse(text).unwrap().to_family(),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn parse_error_has_line() {
        let text = "{\n  \"format\": \"diffiso-family/1\",\n  \"n\": 4,\n  \"r\": ,\n}";
        match FamilyFile::parse(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn digest_checked() {
        let mut file = FamilyFile::from_family(&sample());
        file.graphs[0] = "07".into();
        assert!(file.to_family().is_err());
        file.digest = None;
        assert!(file.to_family().is_ok());
    }

    #[test]
    fn bits_beyond_space_rejected() {
        let text = r#"{"format":"diffiso-family/1","n":4,"r":2,"graphs":["40"]}"#;
        assert!(FamilyFile::parse(text).unwrap().to_family().is_err());
    }
}
