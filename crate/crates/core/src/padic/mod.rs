//! p-adic numbers as finite-precision balls, characters of Q_p and Q_p^×,
//! coset grids, and the Iwasawa decomposition in GL3(Q_p).

mod chars;
mod iwasawa;
mod num;

pub use chars::{
    char_sum_additive, char_sum_additive_closed, char_sum_mult, char_sum_mult_closed, AdditiveChar,
    CosetGrid, MultChar,
};
pub use iwasawa::{iwasawa_gl3, mat_mul, Mat3};
pub use num::{max_precision, PadicNum, Valuation};
pub(crate) use num::pow_u64;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PadicError {
    #[error("precision exhausted")]
    PrecisionExhausted,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not integral")]
    NotIntegral,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("relative precision {0} out of range")]
    BadPrecision(u32),
    #[error("matrix is singular")]
    Singular,
    #[error("bad conductor: {0}")]
    Conductor(String),
}
