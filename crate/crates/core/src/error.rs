//! Error type shared by the whole crate, with a stable mapping to CLI exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A vertex id or vertex set does not match the host graph.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An argument is outside its documented domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Graph text input is malformed; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Input exceeds a configured size cap for an exact method.
    #[error("size cap exceeded: {0}")]
    Cap(String),

    /// Branch-and-bound node budget exhausted; carries the best bounds found.
    #[error("search budget of {nodes} nodes exhausted (best clique {best_clique}, best independent set {best_indep})")]
    Budget {
        nodes: u64,
        best_clique: usize,
        best_indep: usize,
    },

    /// A randomized construction stage failed after exhausting its retries.
    #[error("construction failed in {stage}: {detail}")]
    Construction { stage: &'static str, detail: String },

    /// A certificate failed its independent recount.
    #[error("integrity failure: {0}")]
    Integrity(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// CLI process exit code: 2 usage/parameter, 3 construction/budget, 4 integrity.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Dimension(_)
            | Error::Parameter(_)
            | Error::Parse { .. }
            | Error::Cap(_)
            | Error::Io(_) => 2,
            Error::Budget { .. } | Error::Construction { .. } => 3,
            Error::Integrity(_) => 4,
        }
    }
}
