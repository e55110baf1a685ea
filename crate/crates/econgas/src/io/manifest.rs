//! Run manifests: a flat `key = value` record of one invocation.
//!
//! The manifest pins everything needed to reproduce a run: tool version,
//! subcommand, RNG family, seed, the full resolved configuration, and a
//! sha256 digest per emitted file. Re-running the recorded config and seed
//! reproduces the digests; only the timestamps differ.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use sha2::{Digest, Sha256};

/// RNG family identifier recorded in manifests.
pub const RNG_ID: &str = "chacha8";

#[derive(Debug, Clone)]
pub struct RunManifest {
    pub command: &'static str,
    pub seed: u64,
    pub started_unix: u64,
    pub finished_unix: u64,
    /// Resolved configuration, canonical key order.
    pub config: Vec<(String, String)>,
    /// `(file name, sha256 hex)` per emitted artifact.
    pub outputs: Vec<(String, String)>,
}

impl RunManifest {
    pub fn render(&self) -> String {
        let mut text = String::new();
        let _ = writeln!(text, "tool = econgas");
        let _ = writeln!(text, "version = {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(text, "command = {}", self.command);
        let _ = writeln!(text, "rng = {RNG_ID}");
        let _ = writeln!(text, "seed = {}", self.seed);
        let _ = writeln!(text, "started_unix = {}", self.started_unix);
        let _ = writeln!(text, "finished_unix = {}", self.finished_unix);
        for (key, value) in &self.config {
            let _ = writeln!(text, "{key} = {value}");
        }
        for (name, digest) in &self.outputs {
            let _ = writeln!(text, "sha256:{name} = {digest}");
        }
        text
    }
}

/// Seconds since the Unix epoch.
pub fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Lowercase hex sha256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut hex = String::with_capacity(64);
    for byte in digest {
        let _ = write!(hex, "{byte:02x}");
    }
    hex
}
