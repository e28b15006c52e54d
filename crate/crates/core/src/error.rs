use thiserror::Error;

/// Errors raised by the arithmetic substrate, the recurrence engines and the
/// series verifier.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("series operation left an empty validity window (min order {min}, max order {max})")]
    EmptyWindow { min: i64, max: i64 },

    #[error("coefficient t^{order} requested beyond the validity window (max order {max})")]
    BeyondWindow { order: i64, max: i64 },

    #[error("coefficient is not divisible by z: {0}")]
    NotDivisibleByZ(String),

    #[error("missing table entry: {model} n={n} g2={g2}")]
    MissingEntry { model: &'static str, n: i64, g2: i64 },

    #[error("non-integral coefficient in {model} n={n} g2={g2}: {value}")]
    NonIntegral { model: &'static str, n: i64, g2: i64, value: String },

    #[error("recurrence for {model} is only valid for n > 2 (got n={n})")]
    RecurrenceDomain { model: &'static str, n: i64 },

    #[error("vanishing prefactor denominator D(n={n}, g2={g2})")]
    ZeroDenominator { n: i64, g2: i64 },

    #[error("derivative index {0} is outside the reachable range of the Virasoro recursion")]
    UnreachableIndex(String),

    #[error("oracle limit exceeded: {0}")]
    OracleLimit(String),

    #[error("oracle count {count} not divisible by {divisor} (key {key})")]
    OracleDivision { count: String, divisor: String, key: String },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
