use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse `{0}`")]
    Syntax(String),
    #[error("parts must be positive, got {0}")]
    NonPositivePart(i64),
    #[error("exponents must be positive, got {0}")]
    NonPositiveExponent(i64),
    #[error("parts must be weakly decreasing, found {prev} followed by {next}")]
    NotDecreasing { prev: u32, next: u32 },
    #[error("the empty partition has no legal move")]
    Terminal,
    #[error("unknown move `{0}`, expected L or T")]
    InvalidMove(String),
    #[error("naive evaluation is limited to {limit} cells, got {size}")]
    TooLarge { size: u64, limit: u64 },
    #[error("invalid family parameters: {0}")]
    Family(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
