use thiserror::Error;

/// Errors raised by the arithmetic, field and group routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be odd and positive, got {0}")]
    BadModulus(String),
    #[error("{0} is not an odd prime")]
    NotOddPrime(String),
    #[error("prime {0} is not congruent to 1 mod 8")]
    NotOneModEight(u64),
    #[error("{0} is a perfect square")]
    PerfectSquare(String),
    #[error("value {value} exceeds the configured bound {bound}")]
    BoundExceeded { value: String, bound: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("discriminant mismatch: b^2 - 4ac = {actual}, expected {expected}")]
    DiscriminantMismatch { actual: i128, expected: i128 },
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("element is divisible by sqrt(2)")]
    EvenElement,
    #[error("not a prime of Z[sqrt2]: {0}")]
    NotZSqrt2Prime(String),
    #[error("pair (p={p}, r={r}) fails the prime condition: {reason}")]
    ConditionFailed { p: u64, r: u64, reason: String },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("inconsistent genus data: {0}")]
    InconsistentGenus(String),
    #[error("layer index {0} out of range")]
    LayerOutOfRange(u32),
    #[error("bad field label: {0}")]
    BadLabel(String),
    #[error("unknown group: {0}")]
    UnknownGroup(String),
    #[error("group of order {0} is too large")]
    GroupTooLarge(usize),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("group outside the dihedral/quaternion/semidihedral family: {0}")]
    NotMaximalClass(String),
    #[error("record parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
