//! On-disk catalog of generated artifacts.
//!
//! Every stored artifact gets a content id: the SHA-256 of its kind, its
//! parameter map, and the bytes of every file, all serialized as
//! canonical JSON (sorted keys, no floats in exact payloads). Re-running
//! a generation with the same parameters therefore reproduces the same
//! id and byte-identical files. Writes go through a temporary file and a
//! rename, so a crashed run never leaves a half-written entry.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// How scalar comparisons are carried out downstream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExactMode {
    Auto,
    ForceExact,
    ForceNumeric,
}

/// Run-wide settings shared by the CLI commands.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub tolerance: f64,
    pub exact_mode: ExactMode,
    pub seed: u64,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tolerance: crate::scheme::DEFAULT_TOL,
            exact_mode: ExactMode::Auto,
            seed: 0,
            output_dir: default_catalog_dir(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::BadParameter(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// The catalog directory: `DDFORGE_CATALOG` when set, else `./catalog`.
pub fn default_catalog_dir() -> PathBuf {
    match std::env::var_os("DDFORGE_CATALOG") {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from("catalog"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArtifactKind {
    Hadamard,
    Bgw,
    Gh,
    Latin,
    Ddd,
    Scheme,
    Bundle,
}

impl ArtifactKind {
    fn as_str(self) -> &'static str {
        match self {
            ArtifactKind::Hadamard => "hadamard",
            ArtifactKind::Bgw => "bgw",
            ArtifactKind::Gh => "gh",
            ArtifactKind::Latin => "latin",
            ArtifactKind::Ddd => "ddd",
            ArtifactKind::Scheme => "scheme",
            ArtifactKind::Bundle => "bundle",
        }
    }
}

/// Index record of one stored artifact.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub kind: ArtifactKind,
    pub params: BTreeMap<String, String>,
    pub created: String,
    /// File names relative to the entry directory.
    pub files: Vec<String>,
}

/// The content id: SHA-256 over the canonical JSON of kind, params, and
/// file bytes. Timestamps are deliberately excluded.
fn content_id(
    kind: ArtifactKind,
    params: &BTreeMap<String, String>,
    files: &[(String, Vec<u8>)],
) -> String {
    #[derive(Serialize)]
    struct Payload<'a> {
        kind: &'static str,
        params: &'a BTreeMap<String, String>,
        files: BTreeMap<&'a str, &'a [u8]>,
    }
    let payload = Payload {
        kind: kind.as_str(),
        params,
        files: files.iter().map(|(n, b)| (n.as_str(), b.as_slice())).collect(),
    };
    let canonical = serde_json::to_vec(&payload).expect("canonical payload serializes");
    let mut hasher = Sha256::new();
    hasher.update(&canonical);
    format!("{:x}", hasher.finalize())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().ok_or_else(|| Error::BadParameter("path has no parent".into()))?;
    let tmp = dir.join(format!(
        ".{}.tmp",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("artifact")
    ));
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// A directory of catalog entries, one subdirectory per content id.
pub struct Catalog {
    root: PathBuf,
}

impl Catalog {
    pub fn open(root: impl Into<PathBuf>) -> Result<Self> {
        let root = root.into();
        std::fs::create_dir_all(&root)?;
        Ok(Catalog { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Store the files under their content id and return the entry.
    pub fn store(
        &self,
        kind: ArtifactKind,
        params: BTreeMap<String, String>,
        files: Vec<(String, Vec<u8>)>,
    ) -> Result<CatalogEntry> {
        let id = content_id(kind, &params, &files);
        let dir = self.root.join(format!("{}-{}", kind.as_str(), &id[..12]));
        std::fs::create_dir_all(&dir)?;
        for (name, bytes) in &files {
            write_atomic(&dir.join(name), bytes)?;
        }
        let entry = CatalogEntry {
            id,
            kind,
            params,
            created: chrono::Utc::now().to_rfc3339(),
            files: files.iter().map(|(n, _)| n.clone()).collect(),
        };
        let entry_json = serde_json::to_vec_pretty(&entry)?;
        write_atomic(&dir.join("entry.json"), &entry_json)?;
        Ok(entry)
    }

    /// Directory of the entry with the given id prefix.
    pub fn entry_dir(&self, entry: &CatalogEntry) -> PathBuf {
        self.root.join(format!("{}-{}", entry.kind.as_str(), &entry.id[..12]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_files() -> Vec<(String, Vec<u8>)> {
        vec![("a.json".to_string(), b"{\"v\":3}".to_vec())]
    }

    #[test]
    fn ids_are_stable_and_content_sensitive() {
        let params: BTreeMap<_, _> = [("q".to_string(), "3".to_string())].into();
        let a = content_id(ArtifactKind::Scheme, &params, &sample_files());
        let b = content_id(ArtifactKind::Scheme, &params, &sample_files());
        assert_eq!(a, b);
        let other = content_id(
            ArtifactKind::Scheme,
            &params,
            &[("a.json".to_string(), b"{\"v\":4}".to_vec())],
        );
        assert_ne!(a, other);
        let other_kind = content_id(ArtifactKind::Ddd, &params, &sample_files());
        assert_ne!(a, other_kind);
    }

    #[test]
    fn store_round_trip() {
        let tmp = tempfile::tempdir().unwrap();
        let catalog = Catalog::open(tmp.path()).unwrap();
        let params: BTreeMap<_, _> = [("q".to_string(), "3".to_string())].into();
        let entry = catalog.store(ArtifactKind::Scheme, params.clone(), sample_files()).unwrap();
        let dir = catalog.entry_dir(&entry);
        assert_eq!(std::fs::read(dir.join("a.json")).unwrap(), b"{\"v\":3}");
        let loaded: CatalogEntry =
            serde_json::from_slice(&std::fs::read(dir.join("entry.json")).unwrap()).unwrap();
        assert_eq!(loaded.id, entry.id);
        // byte-identical regeneration, timestamp aside
        let again = catalog.store(ArtifactKind::Scheme, params, sample_files()).unwrap();
        assert_eq!(again.id, entry.id);
    }

    #[test]
    fn tolerance_must_be_positive() {
        let mut config = RunConfig::default();
        assert!(config.validate().is_ok());
        config.tolerance = 0.0;
        assert!(config.validate().is_err());
    }
}
