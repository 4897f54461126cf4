//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("non-finite value in {what}")]
    NonFinite { what: String },

    #[error("{what} {index} out of range (bound {bound})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("n = {n} exceeds the 2^n enumeration limit {limit}")]
    EnumerationLimit { n: usize, limit: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("splitting oracle contract violation on edge {edge}: {detail}")]
    OracleContract { edge: usize, detail: String },

    #[error("not a lifted edge: {detail}")]
    NotALiftedEdge { detail: String },

    #[error("edge {index}: not a lifted edge: {detail}")]
    NotALiftedEdgeAt { index: usize, detail: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("certification failed on edge {edge} ({name}): {witness}")]
    CertificationFailed {
        edge: usize,
        name: String,
        witness: String,
    },

    #[error("verification failed after {retries} retries: max relative error {max_rel_error} at cut {worst_cut}")]
    VerificationFailed {
        retries: u32,
        max_rel_error: f64,
        worst_cut: String,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
