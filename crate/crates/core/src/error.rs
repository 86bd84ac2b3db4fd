use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("limit at u = v = 1 diverges (pole of order {order})")]
    PoleAtOne { order: usize },

    #[error("operation is undefined on the zero function")]
    ZeroInput,

    #[error("division by zero")]
    DivisionByZero,

    /// The divisor's numerator vanishes at the origin, so the quotient would
    /// not expand as a power series there.
    #[error("divisor has zero constant term and cannot become a denominator factor")]
    NonExpandableDivisor,

    #[error("degree difference {0} is odd; not an E-polynomial of pure dimension")]
    OddDegree(i64),

    #[error("genus {genus} out of range (need g >= {min})")]
    GenusOutOfRange { genus: u32, min: u32 },

    #[error("destabilizing degree d = {d} out of range 1..={max} (such pairs are never stable)")]
    DegreeOutOfRange { d: u32, max: u32 },

    #[error("unknown generating-function shape `{0}`")]
    UnknownShape(String),

    #[error("coefficient index {index} exceeds truncation order {order}")]
    IndexBeyondOrder { index: usize, order: usize },

    #[error("series is not invertible: constant coefficient is not a nonzero constant")]
    NotInvertible,

    #[error("divisor subset {0} is not supported here")]
    UnsupportedSubset(String),

    #[error("discrepancy a_{index} = {value} violates log-terminality (need a > -1)")]
    LogTerminalityViolated { index: usize, value: i64 },

    #[error("unknown stratum `{0}`")]
    UnknownStratum(String),

    #[error("parse error: {0}")]
    Parse(String),
}
