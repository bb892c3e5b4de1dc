use thiserror::Error;

/// Errors raised by the exact and p-adic routines in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not p-integral for p = {p}")]
    NotPIntegral { value: String, p: u64 },
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: String, modulus: String },
    #[error("residues live in different rings: mod {left} vs mod {right}")]
    ModulusMismatch { left: String, right: String },
    #[error("invalid parameters: {0}")]
    InvalidShape(String),
    #[error("attempted to evaluate at the pole x = {0}")]
    PoleEvaluation(i64),
    #[error("rational function is not proper: numerator degree {numerator} >= denominator degree {denominator}")]
    ImproperFunction { numerator: usize, denominator: usize },
    #[error("pole structure does not have the 0, -1..-n (double), -(n+1)..-m (simple) shape")]
    UnsupportedPoles,
    #[error("gamma table of size {size} exceeds the cap of {cap} entries")]
    TableTooLarge { size: u128, cap: u64 },
    #[error("lower parameter {0} makes a rising factorial vanish inside the truncation range")]
    ZeroDenominatorTerm(String),
    #[error("supercongruence hypotheses not satisfied: {0}")]
    HypothesisViolated(String),
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
