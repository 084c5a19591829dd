use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph is not connected")]
    Disconnected,

    #[error("no connected graph after {attempts} draws; edge probability too small for this order")]
    GenerationFailed { attempts: u32 },

    #[error("{oracle} oracle refuses graphs with {n} vertices (cap {cap})")]
    CapExceeded { oracle: &'static str, n: usize, cap: usize },

    #[error("interpolation produced a non-integral coefficient at x^{power}")]
    NonIntegral { power: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("relative error undefined: reference value is zero")]
    ZeroDenominator,
}

pub type Result<T> = std::result::Result<T, Error>;
