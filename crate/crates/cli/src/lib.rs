//! Batch front end for the workbench: scenario files in, deterministic reports out.

pub mod builtins;
pub mod oracle;
mod report;
mod run;
pub mod scenario;

use std::path::Path;

pub use report::{Check, Format, Report, Status};
pub use scenario::{Payload, ScenarioFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("unknown builtin {0:?}; `cmdef list` shows the catalog")]
    UnknownBuiltin(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

/// Overrides applied on top of the scenario file.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub precision: Option<u32>,
}

pub fn run_source(name: &str, text: &str, opts: &RunOptions) -> Result<Report, CliError> {
    let scenario = scenario::parse(text)?;
    run::execute(name, &scenario, opts)
}

pub fn run_path(path: &Path, opts: &RunOptions) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let name = path
        .file_stem()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
    run_source(&name, &text, opts).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn run_builtin(id: &str, opts: &RunOptions) -> Result<Report, CliError> {
    let b = builtins::find(id).ok_or_else(|| CliError::UnknownBuiltin(id.to_string()))?;
    run_source(b.id, b.source, opts)
}
