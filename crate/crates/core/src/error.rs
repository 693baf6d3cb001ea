use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base field order {0} is not prime")]
    NonPrimeBase(u32),
    #[error("extension degree must exceed 1 (m = {m}, u = {u})")]
    DegreeTooSmall { m: usize, u: usize },
    #[error("tower too large for the packed representation: {0}")]
    TowerTooLarge(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("basis is not linearly independent over the subfield")]
    SingularBasis,
    #[error("vector is zero")]
    ZeroVector,
    #[error("linear system has dependent columns (rank {rank} < {cols})")]
    RankDeficient { rank: usize, cols: usize },
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("length {n} exceeds extension degree {m}")]
    LengthExceedsDegree { n: usize, m: usize },
    #[error("division by the zero linearized polynomial")]
    DivisorZero,
    #[error("bad length: expected {expected}, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("decoding failure")]
    DecodingFailure,
    #[error("requested rank weight {t} exceeds the limit {max}")]
    WeightTooLarge { t: usize, max: usize },
    #[error("parameter violation: {0}")]
    ParamViolation(String),
    #[error("plaintext tail (last u coordinates) must be zero")]
    BadPlaintext,
    #[error("dual of the Frobenius-sum code has dimension {0}, expected 1")]
    DualDimNotOne(usize),
    #[error("hidden support has dimension {found}, expected {expected}")]
    SupportMismatch { expected: usize, found: usize },
    #[error("message of {len} bytes exceeds capacity of {cap} bytes")]
    MessageTooLong { len: usize, cap: usize },
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

pub type Result<T> = std::result::Result<T, Error>;
