use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    #[error("{function}: |Re s| = {re} overflows without log scaling; use the log variant")]
    OverflowRisk { function: &'static str, re: f64 },

    #[error("{function}: argument outside domain ({detail})")]
    Domain { function: &'static str, detail: String },

    #[error("truncation n_max = {n_max} below required {required} at y = {y}")]
    Truncation { n_max: usize, required: usize, y: f64 },

    #[error("grid under-resolves Fourier content at y = {y}: {have} x-samples, need {need}")]
    Resolution { y: f64, have: usize, need: usize },

    #[error("contour quadrature tail {tail:e} exceeds {limit:e}")]
    Contour { tail: f64, limit: f64 },

    #[error("series did not converge: {0}")]
    Convergence(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("schema error: missing fields [{}]{}", missing.join(", "), if unknown.is_empty() { String::new() } else { format!("; unknown fields [{}]", unknown.join(", ")) })]
    Schema { missing: Vec<String>, unknown: Vec<String> },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("log-space assembly exceeds exponent range ({0})")]
    Overflow(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn pole(function: &'static str, at: impl std::fmt::Display) -> Self {
        Error::Pole { function, at: at.to_string() }
    }

    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { function, detail: detail.into() }
    }
}
