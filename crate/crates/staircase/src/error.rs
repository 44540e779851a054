use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("viewport has {cells} cells, above the cap of {cap}")]
    ViewportTooLarge { cells: u64, cap: u64 },
    #[error("property {property} violated by {counterexample}")]
    PropertyViolation {
        property: &'static str,
        counterexample: String,
    },
    #[error(transparent)]
    Core(#[from] staircase_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status: 1 for domain errors, 2 for malformed input and IO.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Schema { .. } | Error::Json(_) | Error::Io(_) => 2,
            Error::ViewportTooLarge { .. } | Error::PropertyViolation { .. } | Error::Core(_) => 1,
        }
    }
}
