use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix determinant {0} is not a unit of the Laurent ring")]
    NonInvertible(String),
    #[error("matrix {0} is not traceless")]
    NotTraceless(String),
    #[error("operand is not parity-homogeneous: {0}")]
    MixedParity(String),
    #[error("automorphism does not have order {expected}: {detail}")]
    OrderMismatch { expected: u32, detail: String },
    #[error("primitive {m}-th root of unity is not in Q(zeta_{n})")]
    ScalarFieldTooSmall { m: u32, n: u32 },
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("unknown format {0:?}")]
    UnknownFormat(String),
    #[error("invalid gamma: {0}")]
    InvalidGamma(String),
    #[error("the scalar field Q(zeta_{0}) does not contain i; use a cyclotomic order divisible by 4")]
    MissingImaginaryUnit(u32),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
