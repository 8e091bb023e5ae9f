pub mod classes;
pub mod covering;
pub mod julia;
pub mod sandwich;

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::CliError;
use crate::DEFAULT_SEED;

/// Global options shared by all subcommands.
#[derive(Debug, Clone, Default)]
pub struct Context {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

impl Context {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn io(e: std::io::Error) -> CliError {
    CliError::Failed(format!("writing report: {e}"))
}

pub(crate) fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), CliError> {
    write!(out, "{text}").map_err(io)
}
