use thiserror::Error;

use crate::scalar::Mode;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("scalar mode mismatch: {left} vs {right}")]
    ModeMismatch { left: Mode, right: Mode },

    #[error("exponent bound exceeded: total degree {degree} > {limit}")]
    ExponentBound { degree: u64, limit: u32 },

    #[error("compose_radial needs one bare-variable factor, got z^{m_z} zbar^{m_zbar}")]
    RadialExponents { m_z: u32, m_zbar: u32 },

    #[error("operator order {order} exceeds 2")]
    OrderOverflow { order: usize },

    #[error("operator {kind} {detail}")]
    Arity { kind: String, detail: String },

    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index out of range: {0}")]
    IndexRange(String),

    #[error("underdetermined system: {samples} samples for {unknowns} unknowns")]
    Underdetermined { samples: usize, unknowns: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
