use std::path::PathBuf;

use crate::parse::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{context}: {source}")]
    Parse { context: String, source: ParseError },
    #[error("invalid group spec: {0}")]
    Spec(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] saito_core::Error),
    #[error("degree guard exceeded at stage `{stage}`: degree {degree} > {limit}")]
    Guard { stage: String, degree: u32, limit: u32 },
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
