//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input file header does not match the expected schema.
    #[error("schema error: missing column `{0}`")]
    MissingColumn(String),

    /// A cell failed to parse; `row` is 1-based and counts data rows.
    #[error("parse error at data row {row}: {message}")]
    Parse { row: usize, message: String },

    /// Semantically invalid input (bad label, bad code, bad config value).
    #[error("validation error: {0}")]
    Validation(String),

    /// A value left its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Non-finite intermediate in a numeric routine.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Persisted file does not match the expected shape.
    #[error("format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 for i/o trouble, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 2,
            Error::Csv(e) if e.is_io_error() => 2,
            _ => 1,
        }
    }
}
