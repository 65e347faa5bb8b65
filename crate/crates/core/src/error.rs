use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sampling exhausted after {attempts} attempts")]
    SamplingExhausted { attempts: usize },

    #[error("base of an inverted-base Pochhammer symbol is zero")]
    ZeroBase,

    #[error("denominator factor ({param};q) vanishes at k={k}")]
    DivergentDenominator { param: String, k: i64 },

    #[error("very-well-poised factor is singular: b = {b} equals q^-{k}")]
    SpecialPointB { b: String, k: i64 },

    #[error("series has no terminating q^-n parameter")]
    NoTerminatingSlot,

    #[error("template mismatch: expected {expected}, found {found}")]
    TemplateMismatch { expected: String, found: String },

    #[error("4phi3 is not balanced with argument q")]
    NotBalanced,

    #[error("constraint violated: {0}")]
    ConstraintViolated(String),

    #[error("signed permutation has odd parity")]
    OddParity,

    #[error("exponent vector is not integral: {0}")]
    NonIntegral(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown identifier: {0}")]
    Unknown(String),
}
