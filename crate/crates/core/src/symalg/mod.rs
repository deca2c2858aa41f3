//! Exact Laurent polynomials over Q and rational functions in X = q^{-s}.

mod eval;
pub mod gcd;
mod laurent;
mod monomial;
mod ratfunc;
mod symbol;

pub use eval::{eval_exact, eval_float, Assignment, Value, POLE_FLOOR};
pub use laurent::{rat, LaurentPoly, Q};
pub use monomial::Monomial;
pub use ratfunc::{geometric_sum, lfactor, Evaluation, RatFunc};
pub use symbol::{x_sym, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymError {
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("element is not invertible in the Laurent ring")]
    NotInvertible,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("x_power must be positive, got {0}")]
    NonPositiveXPower(i32),
    #[error("geometric series with ratio identically 1")]
    DegenerateSeries,
    #[error("pole: denominator {0} vanishes at the assignment")]
    Pole(String),
    #[error("symbol {0} has no assigned value")]
    Unassigned(String),
    #[error("symbol {0} is assigned a floating value in an exact evaluation")]
    NotExact(String),
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
}

/// Shorthand for a symbol as a polynomial.
pub fn var(name: &str) -> LaurentPoly {
    LaurentPoly::var(name)
}
