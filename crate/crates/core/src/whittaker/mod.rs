//! The new-vector Whittaker function of Ind(μ1 ⊗ μ2 ⊗ μ3) on GL3 with μ1, μ3
//! unramified and μ2 of conductor c, evaluated on diag(ϖ^m, 1, ϖ^{-n}).
//!
//! Symbols: `q` (residue field size, unless fixed to a prime), `t1 = μ1(ϖ)`,
//! `t3 = μ3(ϖ)`. Throughout, X = t1·t3⁻¹·q⁻¹.

mod assembly;
mod suite;
mod support;

pub use assembly::{
    assemble_i1, assemble_i2, assemble_i3_k, assemble_i4_k, assemble_i7_k, assemble_i8_k, i2_k_coefficient,
};
pub use suite::{character_sum_checks, identity_checks};
pub use support::{
    diag_readout, in_kc, section_support, section_witness, ExactPadic, PScalar, QMat, Support, TorusReadout,
};

use crate::symalg::{rat, var, LaurentPoly, SymError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QParam {
    Symbolic,
    Prime(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WhittakerSpec {
    pub q: QParam,
    pub c: u32,
    /// Specialize t3 = t1⁻¹.
    pub su: bool,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum WhittakerError {
    #[error("conductor must be at least 1")]
    Conductor,
    #[error("negative torus exponent")]
    NegativeExponent,
    #[error(transparent)]
    Sym(#[from] SymError),
}

impl WhittakerSpec {
    pub fn new(q: QParam, c: u32, su: bool) -> Result<WhittakerSpec, WhittakerError> {
        if c == 0 {
            return Err(WhittakerError::Conductor);
        }
        Ok(WhittakerSpec { q, c, su })
    }

    pub fn symbolic(c: u32) -> WhittakerSpec {
        WhittakerSpec { q: QParam::Symbolic, c: c.max(1), su: false }
    }

    pub fn q(&self) -> LaurentPoly {
        match self.q {
            QParam::Symbolic => var("q"),
            QParam::Prime(p) => LaurentPoly::constant(rat(p as i64, 1)),
        }
    }

    pub fn q_pow(&self, e: i64) -> LaurentPoly {
        self.q().pow(e as i32)
    }

    pub fn t1(&self) -> LaurentPoly {
        var("t1")
    }

    pub fn t3(&self) -> LaurentPoly {
        if self.su {
            var("t1").pow(-1)
        } else {
            var("t3")
        }
    }

    /// X = t1·t3⁻¹·q⁻¹.
    pub fn x(&self) -> LaurentPoly {
        self.t1() * self.t3().pow(-1) * self.q_pow(-1)
    }

    /// X ≠ 1, the irreducibility condition, as a symbolic statement.
    pub fn is_nondegenerate(&self) -> bool {
        !(self.x() - LaurentPoly::one()).is_zero()
    }
}

/// W_f(1) = X^c(1 − X).
pub fn w_at_one(spec: &WhittakerSpec) -> LaurentPoly {
    let x = spec.x();
    x.pow(spec.c as i32) * (LaurentPoly::one() - x)
}

/// I(m, n) = q^{-2m-2n}·(1 − (qX)^{m+n+1})/(1 − qX)·W_f(1), with the division done exactly.
pub fn closed_form_i(spec: &WhittakerSpec, m: i64, n: i64) -> LaurentPoly {
    if m < 0 || n < 0 {
        return LaurentPoly::zero();
    }
    let qx = spec.q() * spec.x();
    let num = LaurentPoly::one() - qx.pow((m + n + 1) as i32);
    let den = LaurentPoly::one() - qx;
    let ratio = num.div_exact(&den).expect("1 - Y divides 1 - Y^N");
    spec.q_pow(-2 * (m + n)) * ratio * w_at_one(spec)
}

/// W_f(diag(ϖ^m, 1, ϖ^{-n})) = q^{-(m+n)}(t1t3)^{-n}(t1^{m+n+1} − t3^{m+n+1})/(t1 − t3)·W_f(1);
/// zero off the dominant cone.
pub fn closed_form_w(spec: &WhittakerSpec, m: i64, n: i64) -> LaurentPoly {
    if m < 0 || n < 0 {
        return LaurentPoly::zero();
    }
    let (t1, t3) = (spec.t1(), spec.t3());
    let e = (m + n + 1) as i32;
    let num = t1.pow(e) - t3.pow(e);
    let quotient = num.div_exact(&(&t1 - &t3)).expect("t1 - t3 divides t1^N - t3^N");
    spec.q_pow(-(m + n)) * (t1 * t3).pow(-n as i32) * quotient * w_at_one(spec)
}

/// W from the integral: W = q^{n+m}·t1^{-n}·t3^m·I(m, n).
pub fn w_from_integral(spec: &WhittakerSpec, m: i64, n: i64, integral: &LaurentPoly) -> LaurentPoly {
    spec.q_pow(m + n) * spec.t1().pow(-n as i32) * spec.t3().pow(m as i32) * integral
}

/// W_f(diag(ϖ^m, 1, ϖ^{-m})) / W_f(1), the quantity matched against the GL2 side.
pub fn lift_relation_w(spec: &WhittakerSpec, m: i64) -> Result<LaurentPoly, WhittakerError> {
    if m < 0 {
        return Err(WhittakerError::NegativeExponent);
    }
    let w = closed_form_w(spec, m, m);
    Ok(w.div_exact(&w_at_one(spec)).expect("W_f(1) divides W_f(diag)"))
}
