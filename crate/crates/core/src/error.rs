use thiserror::Error;

/// Errors produced by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("precision overflow: {requested} digits requested, cap is {cap}")]
    PrecisionOverflow { requested: u32, cap: u32 },

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("step too large: x/a = {ratio} exceeds 0.5")]
    StepTooLarge { ratio: f64 },

    #[error("limit exceeded: {value} > {limit}")]
    LimitExceeded { value: u64, limit: u64 },

    #[error("alignment error: limit {limit} is not a multiple of block size {block_size}")]
    Alignment { limit: u64, block_size: u64 },

    #[error("path passes within {clearance:e} of the pole at the origin")]
    PoleProximity { clearance: f64 },

    #[error("sieve cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Cache(err.to_string())
    }
}
