use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The pair (q, a1) violates q >= 2 or the Hasse constraint a1^2 <= 4q.
    #[error("invalid trace pair (q={q}, a1={a1}): requires q >= 2 and a1^2 <= 4q")]
    InvalidTracePair { q: u64, a1: i64 },

    /// Negative input where a nonnegative integer is required.
    #[error("negative input: {0}")]
    NegativeInput(&'static str),

    /// An argument is outside the documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    /// A supersingular pair was passed where an ordinary one is required.
    #[error("pair (q={q}, a1={a1}) is supersingular; use supersingular_degrees")]
    ExpectedOrdinary { q: u64, a1: i64 },

    /// An ordinary pair was passed where a supersingular one is required.
    #[error("pair (q={q}, a1={a1}) is ordinary; use ordinary_degrees")]
    ExpectedSupersingular { q: u64, a1: i64 },

    /// A sign could not be certified at the maximum working precision.
    #[error("precision exhausted while certifying the sign of f({q}, n) near n={n}")]
    PrecisionExhausted { q: u64, n: u64 },

    /// The angle approximation is too coarse for the requested degree.
    #[error("angle approximation too coarse for degree n={n}: recompute with smaller eps")]
    InsufficientAnglePrecision { n: u64 },

    /// A proved guarantee failed on re-verification; indicates a bug.
    #[error("internal guarantee violated: {0}")]
    GuaranteeViolated(&'static str),

    /// Output could not be written.
    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
