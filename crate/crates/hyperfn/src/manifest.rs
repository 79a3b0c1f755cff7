//! Run manifests: a reproducibility record emitted on every CLI run.
//!
//! The digest covers the subcommand, its arguments, and the raw bytes of
//! every input file, so identical manifests imply identical outputs.

use serde::Serialize;
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tool_version: String,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, digest_parts: &[&[u8]], seed: Option<u64>) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        for part in digest_parts {
            hasher.update([0u8]);
            hasher.update(part);
        }
        let digest = hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect::<String>();
        RunManifest {
            command: command.to_string(),
            config_digest: digest,
            seed,
            tool_version: TOOL_VERSION.to_string(),
            outputs: Vec::new(),
        }
    }

    pub fn record_output(&mut self, path: &str) {
        self.outputs.push(path.to_string());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable_and_input_sensitive() {
        let a = RunManifest::new("hyper eval", &[b"--x", b"5"], None);
        let b = RunManifest::new("hyper eval", &[b"--x", b"5"], None);
        let c = RunManifest::new("hyper eval", &[b"--x", b"6"], None);
        assert_eq!(a.config_digest, b.config_digest);
        assert_ne!(a.config_digest, c.config_digest);
    }

    #[test]
    fn part_boundaries_matter() {
        let a = RunManifest::new("cmd", &[b"ab", b"c"], None);
        let b = RunManifest::new("cmd", &[b"a", b"bc"], None);
        assert_ne!(a.config_digest, b.config_digest);
    }
}
