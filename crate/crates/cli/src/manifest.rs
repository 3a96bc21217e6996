use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// One line per run. No clock readings, so identical runs give identical lines.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    pub version: &'static str,
    pub inputs: BTreeMap<String, String>,
    pub outcome: String,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, parameters: serde_json::Value) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters,
            version: env!("CARGO_PKG_VERSION"),
            inputs: BTreeMap::new(),
            outcome: String::new(),
            outputs: Vec::new(),
        }
    }

    /// Read an input file, remembering its digest.
    pub fn read_input(&mut self, path: &Path) -> anyhow::Result<String> {
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.inputs
            .insert(path.display().to_string(), hex::encode(Sha256::digest(&bytes)));
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    /// Append to `dir/manifest.jsonl`, or print to stderr without a directory.
    pub fn record(&self, dir: Option<&Path>) -> anyhow::Result<()> {
        let line = serde_json::to_string(self)?;
        match dir {
            Some(dir) => {
                let path: PathBuf = dir.join("manifest.jsonl");
                let mut f = OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(&path)
                    .with_context(|| format!("opening {}", path.display()))?;
                writeln!(f, "{line}")?;
            }
            None => eprintln!("{line}"),
        }
        Ok(())
    }
}
