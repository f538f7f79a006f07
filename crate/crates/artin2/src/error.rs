//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The requested modulus polynomial factors over F₂.
    #[error("reducible modulus polynomial: {0}")]
    ReduciblePolynomial(String),

    /// A polynomial or element does not have the degree the context requires.
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at byte {pos}: {msg}")]
    ParseError { pos: usize, msg: String },

    #[error("unknown symbol '{symbol}' at byte {pos}")]
    UnknownSymbol { pos: usize, symbol: String },

    /// An operation would produce a result with no known coefficients, or a
    /// required coefficient lies beyond the precision cutoff.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    DomainError(String),

    /// The zero coset carries no quadratic character.
    #[error("zero coset has no associated quadratic character")]
    ZeroCoset,

    /// The two cosets do not span a plane.
    #[error("degenerate plane: {0}")]
    DegeneratePlane(String),

    /// An enumeration exceeds the configured budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A formal-degree evaluation asked for an irrational power of the base.
    #[error("non-integral exponent: {0}")]
    NonIntegralExponent(String),

    /// An enhancement label invalid for the parameter's component group.
    #[error("invalid enhancement: {0}")]
    InvalidEnhancement(String),
}
