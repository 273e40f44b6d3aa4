use alloc::string::String;

use thiserror::Error;

use crate::field::Field;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("arity mismatch: {0} vs {1} variables")]
    ArityMismatch(usize, usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("component {index} is not homogeneous")]
    NotHomogeneous { index: usize },
    #[error("component {index} has degree {found}, expected {expected}")]
    DegreeMismatch { index: usize, expected: u64, found: u64 },
    #[error("all components are zero")]
    ZeroMap,
    #[error("expected {expected} components, found {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("component {index} is not a polynomial on the chart x0 != 0")]
    NotPolynomialOnChart { index: usize },
    #[error("term budget exceeded: {terms} terms > cap {cap}")]
    BudgetExceeded { terms: usize, cap: usize },
    #[error("operation requires a prime field, got {0}")]
    NeedsFiniteField(Field),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("sequence too short: need {needed} terms, have {have}")]
    SequenceTooShort { needed: usize, have: usize },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}
