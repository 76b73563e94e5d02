//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Helicity frame is undefined: momentum direction collinear with the
    /// reference axis, so the azimuth has no meaning.
    #[error("degenerate helicity frame: direction collinear with reference axis (|cross| = {cross_norm:e})")]
    DegenerateFrame { cross_norm: f64 },

    /// A decay-plane normal could not be formed (cross product below cutoff).
    #[error("degenerate decay plane: |cross| = {cross_norm:e} below cutoff")]
    DegeneratePlane { cross_norm: f64 },

    /// Angles requested for a zero vector.
    #[error("zero vector has no direction")]
    ZeroVector,

    /// Argument outside its mathematical domain.
    #[error("domain error: {what} = {value} outside {domain}")]
    DomainError {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// Angular-momentum arguments that are not valid (half-)integers or
    /// violate |m| <= j.
    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),

    /// A proposed accept-reject point exceeded the cached envelope. The
    /// envelope is stale; the run must abort rather than clip.
    #[error("accept-reject envelope violated: pdf = {pdf:e} > envelope = {envelope:e}")]
    EnvelopeViolation { pdf: f64, envelope: f64 },

    /// Amplitude fit attempted on an all-zero histogram.
    #[error("degenerate fit: histogram has no entries")]
    DegenerateFit,

    /// Operation requires at least one event or bin.
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    /// Malformed event file.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
