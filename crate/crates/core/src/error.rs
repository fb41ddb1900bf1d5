//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by loading, validation, and the numeric pipeline.
///
/// `Parse`, `Input`, and the identifier-lookup variants signal bad user
/// input; `NonConvergence` signals a numeric failure on pathological data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("no seed ids could be mapped onto the network")]
    NoSeedsMapped,

    #[error("node {index} ({id}) has degree 0; run prune_isolated before normalizing")]
    IsolatedNode { index: usize, id: String },

    #[error("did not converge within {iterations} iterations (last residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("disease {0:?} not present in the similarity network")]
    UnknownDisease(String),

    #[error("no position known for gene {0:?}")]
    MissingPosition(String),

    #[error("column {column} of the supermatrix sums to {sum}, not 1")]
    NotColumnStochastic { column: usize, sum: f64 },

    #[error("cross-validation fold for target {target:?} failed: {source}")]
    FoldFailure {
        target: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True when the error points at user-supplied input rather than an
    /// internal numeric failure. CLI exit codes key off this.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Parse { .. }
            | Error::Input(_)
            | Error::Io(_)
            | Error::NoSeedsMapped
            | Error::IsolatedNode { .. }
            | Error::LengthMismatch { .. }
            | Error::UnknownDisease(_)
            | Error::MissingPosition(_)
            | Error::NotColumnStochastic { .. } => true,
            Error::NonConvergence { .. } => false,
            Error::FoldFailure { source, .. } => source.is_input_error(),
        }
    }
}
