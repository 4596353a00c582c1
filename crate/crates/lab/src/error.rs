// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{what}, line {line}: {reason}")]
    Format {
        what: String,
        line: usize,
        reason: String,
    },
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] csbm_core::Error),
}

pub type Result<T> = std::result::Result<T, LabError>;

pub(crate) fn format_err(what: &str, line: usize, reason: impl Into<String>) -> LabError {
    LabError::Format {
        what: what.to_string(),
        line,
        reason: reason.into(),
    }
}
