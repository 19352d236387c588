use thiserror::Error;

/// Errors produced by the field, curve and compression layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("exceptional denominator in the addition law")]
    ExceptionalDenominator,

    #[error("point is not on the curve")]
    NotOnCurve,

    #[error("point is not in the trace-zero subgroup")]
    NotTraceZero,

    #[error("degenerate fiber: t1 + t2 + 1 = 0 leaves t3 unconstrained")]
    DegenerateFiber,

    #[error("non-generic conic: {0}")]
    NonGenericConic(&'static str),

    #[error("linear system has no unique solution")]
    NoSolution,

    #[error("root polynomial has degree {found}, expected {expected}")]
    DegreeDefect { expected: usize, found: usize },

    #[error("polynomial is not symmetric under z{0} <-> z{1}")]
    NotSymmetric(usize, usize),

    #[error("polynomial is zero in the eliminated variable")]
    ZeroPolynomial,

    #[error("malformed representation: {0}")]
    MalformedRep(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("no point found after {0} samples; check the curve parameters")]
    SamplingFailed(usize),

    #[error("internal arithmetic error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
