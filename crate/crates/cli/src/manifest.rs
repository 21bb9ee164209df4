//! Run manifests: everything needed to reproduce a run bit-exactly, plus
//! SHA-256 checksums of the produced artifacts.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::Context;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::formats::{to_json_pretty, write_file};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsOut {
    pub population: usize,
    pub iterations: usize,
    pub capacity: usize,
    pub niche_fraction: f64,
    pub delta: [f64; 3],
    pub walk_step: f64,
    /// Grid override in degrees; 0 means the scenario file's grid was used.
    pub grid_deg: f64,
}

/// Written to `manifest.json` in every output directory. The `timestamp`
/// varies across runs; every other field and every artifact checksum is
/// deterministic for a fixed seed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub scenario_path: String,
    pub scenario_sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution_path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution_sha256: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<String>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<String>,
    pub threads: usize,
    pub version: String,
    pub timestamp_unix: u64,
    /// Artifact file name -> SHA-256 of its bytes.
    pub artifacts: BTreeMap<String, String>,
}

impl Manifest {
    pub fn new(command: &str, scenario_path: &Path, scenario_sha256: String, seed: u64) -> Self {
        Manifest {
            command: command.to_string(),
            scenario_path: scenario_path.display().to_string(),
            scenario_sha256,
            solution_path: None,
            solution_sha256: None,
            algorithm: None,
            seed,
            params: None,
            perturbation: None,
            threads: rayon::current_num_threads(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            artifacts: BTreeMap::new(),
        }
    }

    pub fn with_solution(mut self, path: &Path, sha256: String) -> Self {
        self.solution_path = Some(path.display().to_string());
        self.solution_sha256 = Some(sha256);
        self
    }

    /// Record the manifest before any computation starts.
    pub fn record_initial(&self, out_dir: &Path) -> anyhow::Result<()> {
        write_file(&out_dir.join("manifest.json"), &to_json_pretty(self)?)
    }

    /// Add an artifact's checksum after it has been written.
    pub fn add_artifact(&mut self, out_dir: &Path, name: &str) -> anyhow::Result<()> {
        let digest = sha256_file(&out_dir.join(name))?;
        self.artifacts.insert(name.to_string(), digest);
        Ok(())
    }

    /// Rewrite the manifest with the final artifact checksums.
    pub fn finalize(&self, out_dir: &Path) -> anyhow::Result<()> {
        self.record_initial(out_dir)
    }
}

pub fn sha256_file(path: &Path) -> anyhow::Result<String> {
    let bytes =
        std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(sha256_hex(&bytes))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

/// Create the output directory if needed and return it.
pub fn ensure_out_dir(path: &PathBuf) -> anyhow::Result<PathBuf> {
    std::fs::create_dir_all(path)
        .with_context(|| format!("cannot create output directory {}", path.display()))?;
    Ok(path.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_known_vector() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
