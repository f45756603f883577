use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::Context;
use serde::Serialize;
use serde_json::Value;

/// Provenance written next to every output file as `<output>.manifest.json`,
/// so that the output itself stays byte-identical across runs.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    pub seed: u64,
    pub version: String,
    pub duration_secs: f64,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new(command: &str, parameters: Value, seed: u64, duration: Duration, outputs: Vec<PathBuf>) -> Self {
        RunManifest {
            command: command.into(),
            parameters,
            seed,
            version: env!("CARGO_PKG_VERSION").into(),
            duration_secs: duration.as_secs_f64(),
            outputs,
        }
    }

    pub fn sidecar_path(output: &Path) -> PathBuf {
        let mut name = output.file_name().map(|n| n.to_os_string()).unwrap_or_default();
        name.push(".manifest.json");
        output.with_file_name(name)
    }

    pub fn write_beside(&self, output: &Path) -> anyhow::Result<PathBuf> {
        let path = Self::sidecar_path(output);
        std::fs::write(&path, serde_json::to_string_pretty(self)?)
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }
}
