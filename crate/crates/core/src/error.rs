use thiserror::Error;

/// Errors raised by the algebra kernel and everything built on it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: `{0}` vs `{1}`")]
    RingMismatch(String, String),
    #[error("unknown generator `{0}` in ring `{1}`")]
    UnknownGenerator(String, String),
    #[error("exponent {exponent} of `{var}` is below the Laurent bound -{bound}")]
    LaurentBoundExceeded { var: String, exponent: i32, bound: u32 },
    #[error("negative power of `{0}`, which is not inverted")]
    NotInverted(String),
    #[error("substituted series for `{0}` has a nonzero constant term")]
    NonzeroConstantTerm(String),
    #[error("no inverse image is available for `{0}`")]
    NotInvertible(String),
    #[error("leading coefficient of `{0}` is not 1")]
    LeadingCoefficient(String),
    #[error("series is not in a single power-series variable: {0}")]
    NotUnivariate(String),
    #[error("integrality violation: {0}")]
    Integrality(String),
    #[error("relation `{0}` is not homogeneous for the grading, cannot bound multipliers")]
    Inhomogeneous(String),
    #[error("generator `{0}` has non-positive degree and appears in a relation; multipliers are unbounded")]
    UnboundedMultipliers(String),
    #[error("group order {0} exceeds the bound {1}")]
    OrderBound(u64, u64),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("certificate failure: {0}")]
    Certificate(String),
    #[error("descent failure at {stage}: negative power of `{var}` survives")]
    Descent { stage: String, var: String },
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
