//! The `# `-prefixed header every report starts with.

use std::fmt;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestInput {
    pub path: PathBuf,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunManifest {
    pub version: &'static str,
    pub command: String,
    pub inputs: Vec<ManifestInput>,
    pub options: Vec<(String, String)>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            inputs: Vec::new(),
            options: Vec::new(),
        }
    }

    pub fn input(&mut self, path: &Path, bytes: &[u8]) {
        let path = path.canonicalize().unwrap_or_else(|_| path.to_path_buf());
        self.inputs.push(ManifestInput {
            path,
            sha256: sha256_hex(bytes),
        });
    }

    pub fn option(&mut self, key: &str, value: impl ToString) {
        self.options.push((key.to_string(), value.to_string()));
    }
}

impl fmt::Display for RunManifest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# covering-forge {}", self.version)?;
        writeln!(f, "# command: {}", self.command)?;
        for input in &self.inputs {
            writeln!(
                f,
                "# input: {} sha256={}",
                input.path.display(),
                input.sha256
            )?;
        }
        for (k, v) in &self.options {
            writeln!(f, "# option: {k}={v}")?;
        }
        Ok(())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
