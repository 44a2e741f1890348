use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("factor vanishes identically: {0}")]
    VanishingFactor(String),
    #[error("term is not q-proper: {0}")]
    NotProper(String),
    #[error("invalid term: {0}")]
    InvalidTerm(String),
    #[error("not q-Gosper summable")]
    NotSummable,
    #[error("no first-order recurrence: {0}")]
    NoFirstOrder(String),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("convergence condition unsatisfiable: {0}")]
    ConditionUnsatisfiable(String),
    #[error("convergence condition violated: {0}")]
    ConditionViolated(String),
    #[error("series diverges: {0}")]
    Divergent(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("index error: {0}")]
    IndexError(String),
    #[error("unbalanced classical limit: {0}")]
    UnbalancedLimit(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
