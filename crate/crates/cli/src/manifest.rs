//! Run provenance attached to every JSON output: enough to rerun the exact
//! command (the wall time is informational and excluded from reproducibility
//! comparisons).

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::time::Instant;

pub struct RunManifest {
    command: &'static str,
    seed: u64,
    params: Value,
    digests: Vec<(String, String)>,
    started: Instant,
}

impl RunManifest {
    pub fn new(command: &'static str, seed: u64) -> Self {
        Self {
            command,
            seed,
            params: Value::Null,
            digests: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn params(&mut self, params: Value) {
        self.params = params;
    }

    pub fn digest_input(&mut self, path: &std::path::Path) -> std::io::Result<()> {
        let bytes = std::fs::read(path)?;
        let digest = Sha256::digest(&bytes);
        self.digests
            .push((path.display().to_string(), format!("{digest:x}")));
        Ok(())
    }

    pub fn finish(&self) -> Value {
        let digests: Value = self
            .digests
            .iter()
            .map(|(path, hash)| json!({"path": path, "sha256": hash}))
            .collect();
        json!({
            "command": self.command,
            "parameters": self.params,
            "seed": self.seed,
            "version": env!("CARGO_PKG_VERSION"),
            "wall_ms": self.started.elapsed().as_millis() as u64,
            "input_digests": digests,
        })
    }
}
