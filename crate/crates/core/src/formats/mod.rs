//! On-disk formats: feature, score and embedding CSV files, model and
//! report JSON documents.
//!
//! Reals are written with 17 significant digits so every file round-trips
//! bit-exactly.

mod embeddings;
mod features;
mod json;
mod model;
mod report;
mod scores;

use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub use embeddings::{parse_embeddings, read_embeddings, write_embeddings};
pub use features::{parse_features, read_features, write_features, FeatureKind, FeatureRow, FeatureTable};
pub use json::to_json_string;
pub use model::{load_model, model_from_json, model_to_json, save_model};
pub use report::{report_to_json, Report};
pub use scores::{parse_scores, read_scores, write_scores};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{context}line {line}: {message}")]
    Invalid {
        context: String,
        line: u64,
        message: String,
    },
    #[error("{0}")]
    Json(String),
    #[error("{0}")]
    Schema(String),
}

impl FormatError {
    pub(crate) fn invalid(line: u64, message: impl Into<String>) -> Self {
        FormatError::Invalid {
            context: String::new(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn with_path(self, path: &Path) -> Self {
        match self {
            FormatError::Invalid { line, message, .. } => FormatError::Invalid {
                context: format!("{}: ", path.display()),
                line,
                message,
            },
            other => other,
        }
    }
}

/// 17 significant digits in scientific notation.
pub fn format_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub(crate) fn parse_real(s: &str, line: u64, column: &str) -> Result<f64, FormatError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| FormatError::invalid(line, format!("column {column}: {s:?} is not a number")))?;
    if !v.is_finite() {
        return Err(FormatError::invalid(line, format!("column {column}: non-finite value")));
    }
    Ok(v)
}

pub(crate) fn read_file(path: &Path) -> Result<Vec<u8>, FormatError> {
    std::fs::read(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes through a temporary sibling file and renames it into place, so a
/// failed write never leaves a partial file at `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), FormatError> {
    let io_err = |source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    std::fs::write(&tmp, bytes).map_err(io_err)?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        io_err(e)
    })
}
