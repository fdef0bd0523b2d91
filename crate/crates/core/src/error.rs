use thiserror::Error;

/// Errors shared by every module in this crate.
///
/// `Parse` is a validation failure (a malformed literal); everything else is
/// a domain failure: the inputs were well-formed but the requested operation
/// is not defined for them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {0} lies outside [0, 1)")]
    OutsideUnitInterval(String),
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u32),
    #[error("digit {digit} is not a base-{base} digit")]
    InvalidDigit { digit: u32, base: u32 },
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("base mismatch: {0} vs {1}")]
    BaseMismatch(u32, u32),
    #[error("index pair (m={m}, k={k}) is not admissible: negative m requires k != 0")]
    BadIndexPair { m: i64, k: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(String, String),
    #[error("generation must be negative, got {0}")]
    NonNegativeGeneration(i64),
    #[error("empty interval: left {0} is not below right {1}")]
    EmptyInterval(String, String),
    #[error("{0} is {1}-far, so no adversarial witness exists")]
    ShiftIsFar(String, u32),
    #[error("grids are not adjacent")]
    NotAdjacent,
    #[error("no cell of either grid contains the query")]
    NotCoverable,
    #[error("limit profile changed under re-representation: ({0}, {1}) vs ({2}, {3})")]
    ProfileDichotomy(String, String, String, String),
    #[error("invalid {what} literal: {token}")]
    Parse { what: &'static str, token: String },
}

impl Error {
    /// True for malformed-input failures, false for domain failures.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
