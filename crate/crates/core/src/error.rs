use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QwkError {
    #[error("rank {n} outside the supported range 1..={max}")]
    RankOutOfRange { n: usize, max: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("element is not parity-homogeneous")]
    NotHomogeneous,
    #[error("expected an odd element")]
    NotOdd,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("grading has non-integral eigenvalue {0}")]
    NonIntegralGrading(String),
    #[error("cap {cap} exceeds the configured maximum {max}")]
    CapExceeded { cap: usize, max: usize },
    #[error("generator order incompatible with the subalgebra: {0}")]
    OrderIncompatible(String),
    #[error("window {d0}..={d1} outside truncation depth {depth}")]
    WindowOutOfRange { d0: usize, d1: usize, depth: usize },
    #[error("weight outside the truncation")]
    OutsideTruncation,
    #[error("closure failure: {0}")]
    ClosureFailure(String),
    #[error("relation check failed: {0}")]
    RelationCheck(String),
    #[error("theta does not commute with E")]
    ThetaNotInT,
    #[error("shift m = {m} must exceed {bound}")]
    ShiftTooSmall { m: i64, bound: i64 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, QwkError>;
