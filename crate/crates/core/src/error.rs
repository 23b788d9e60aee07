use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid range {start}..={end} for permutation of length {len}")]
    Range { start: usize, end: usize, len: usize },

    #[error("arity mismatch: expected {expected} parts, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("{what}: n = {n} exceeds the bound {bound}{}", hint.as_ref().map(|h| format!(" ({h})")).unwrap_or_default())]
    Resource {
        what: &'static str,
        n: usize,
        bound: usize,
        hint: Option<String>,
    },

    #[error("malformed tree: {0}")]
    Structure(String),

    #[error("gamma expansion failed: {0}")]
    Expansion(String),

    #[error("index error: {0}")]
    Index(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series inversion failed: {0}")]
    Inversion(String),
}

pub type Result<T> = std::result::Result<T, Error>;
