use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const MANIFEST_FILE: &str = "manifest.json";

/// Everything needed to reproduce a run. No timestamps or host data, so the
/// same inputs give the same manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config: PathBuf,
    pub overrides: BTreeMap<String, String>,
    pub out: PathBuf,
    pub version: String,
    /// SHA-256 of the config file contents.
    pub input_sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: &str, config: &Path, input: &[u8], overrides: BTreeMap<String, String>, out: &Path) -> Self {
        RunManifest {
            command: command.to_owned(),
            config: config.to_owned(),
            overrides,
            out: out.to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            input_sha256: sha256_hex(input),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_owned(), source })?;
        serde_json::from_str(&text).map_err(|e| CliError::input(path, e))
    }

    /// Manifest for the same inputs written to another directory.
    pub fn with_out(&self, out: &Path) -> Self {
        RunManifest { out: out.to_owned(), ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut o = BTreeMap::new();
        o.insert("grid".to_owned(), "16".to_owned());
        let m = RunManifest::new("billiard", Path::new("demo.toml"), b"abc", o, Path::new("out"));
        assert_eq!(m.input_sha256, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
        let back: RunManifest = serde_json::from_str(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }
}
