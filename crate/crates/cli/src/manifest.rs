use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Everything needed to reproduce a run. Replaying `argv` with the recorded
/// seed rewrites the outputs byte for byte.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    /// Arguments after the program name, with `--seed` made explicit.
    pub argv: Vec<String>,
    pub parameters: Value,
    pub master_seed: u64,
    pub version: String,
    pub timestamp: String,
    pub wall_clock_seconds: f64,
    /// Output path to SHA-256 hex digest.
    pub outputs: BTreeMap<String, String>,
}

pub fn manifest_path(out: &Path) -> PathBuf {
    suffixed(out, ".manifest.json")
}

pub fn suffixed(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn digest_file(path: &Path) -> std::io::Result<String> {
    Ok(hex::encode(Sha256::digest(fs::read(path)?)))
}

pub fn digests(paths: &[PathBuf]) -> std::io::Result<BTreeMap<String, String>> {
    paths
        .iter()
        .map(|p| Ok((p.display().to_string(), digest_file(p)?)))
        .collect()
}

/// `argv` without the program name and with the seed pinned.
pub fn resolved_argv(raw: &[String], seed: u64) -> Vec<String> {
    let mut argv: Vec<String> = raw.iter().skip(1).cloned().collect();
    let has_seed = argv.iter().any(|a| a == "--seed" || a.starts_with("--seed="));
    if !has_seed {
        argv.push("--seed".into());
        argv.push(seed.to_string());
    }
    argv
}
