use std::path::PathBuf;

use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A model or sweep parameter lies outside its domain.
    #[error("invalid parameter: {0}")]
    Domain(String),

    /// A numerical routine was called with inputs violating its contract.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The excitation scan reached its cap while block energies were still
    /// decreasing (superradiant runaway).
    #[error("excitation scan exhausted at k = {k_max} without certifying a minimum")]
    CapExhausted { k_max: usize },

    /// Root finding was given a bracket with no sign change.
    #[error("no sign change of E_k - E_(k-1) on [{lo}, {hi}] for k = {k}")]
    Bracket { k: usize, lo: f64, hi: f64 },

    /// Problem size exceeds a guard.
    #[error("size guard: {0}")]
    Size(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
