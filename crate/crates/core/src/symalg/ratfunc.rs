use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;

use super::eval::{eval_exact, eval_float, Assignment, Value, POLE_FLOOR};
use super::gcd::{poly_div_exact, poly_gcd};
use super::{x_sym, LaurentPoly, Monomial, SymError, Q};

/// Quotient of two Laurent polynomials in X and the coefficient symbols.
///
/// Arithmetic keeps fractions unreduced; `==` compares by cross-multiplication
/// and `reduce` gives the canonical representative.
#[derive(Clone)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// Result of evaluating a rational function at numeric values.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub value: Value,
    /// Ratio of summed term magnitudes to the result magnitude (1 for exact).
    pub condition: f64,
}

/// (power of X, coefficient) pairs.
pub type XCoeffs = Vec<(i32, LaurentPoly)>;

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<RatFunc, SymError> {
        if den.is_zero() {
            return Err(SymError::ZeroDenominator);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> RatFunc {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> RatFunc {
        RatFunc::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(LaurentPoly::one())
    }

    /// The formal variable X = q^{-s}.
    pub fn x() -> RatFunc {
        RatFunc::from_poly(LaurentPoly::sym(x_sym()))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn inv(&self) -> Result<RatFunc, SymError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc, SymError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc, SymError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = base.num.try_pow(e.abs())?;
        let d = base.den.try_pow(e.abs())?;
        RatFunc::new(n, d)
    }

    /// Canonical form: numerator and denominator are coprime polynomials and the
    /// lowest-order denominator coefficient is 1.
    pub fn reduce(&self) -> RatFunc {
        if self.num.is_zero() {
            return RatFunc::zero();
        }
        let mn = self.num.monomial_content();
        let md = self.den.monomial_content();
        let n = self.num.try_mul_monomial(&mn.try_pow(-1).expect("shift")).expect("shift");
        let d = self.den.try_mul_monomial(&md.try_pow(-1).expect("shift")).expect("shift");
        let g = poly_gcd(&n, &d);
        let n = poly_div_exact(&n, &g).expect("gcd divides numerator");
        let d = poly_div_exact(&d, &g).expect("gcd divides denominator");
        let unit = mn.try_div(&md).expect("exponent overflow in reduce");
        let mut up = Vec::new();
        let mut down = Vec::new();
        for (s, e) in unit.iter() {
            if e > 0 {
                up.push((s, e));
            } else {
                down.push((s, -e));
            }
        }
        let n = n.try_mul_monomial(&Monomial::from_pairs(&up).expect("small")).expect("shift");
        let d = d.try_mul_monomial(&Monomial::from_pairs(&down).expect("small")).expect("shift");
        let lead = d.trailing().map(|(_, c)| c.clone()).expect("nonzero denominator");
        let inv = lead.recip();
        RatFunc { num: n.scale(&inv), den: d.scale(&inv) }
    }

    /// When the denominator is a monomial, the quotient as a Laurent polynomial.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        let (c, m) = self.den.as_monomial()?;
        let inv = LaurentPoly::term(c.recip(), m.try_pow(-1).ok()?);
        Some(&self.num * inv)
    }

    /// Division by a polynomial that is expected to be exact.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        self.as_laurent().or_else(|| self.num.div_exact(&self.den))
    }

    pub fn subs(&self, s: super::Symbol, value: &LaurentPoly) -> Result<RatFunc, SymError> {
        RatFunc::new(self.num.subs(s, value)?, self.den.subs(s, value)?)
    }

    /// Substitutes a rational function for a symbol.
    pub fn subs_rat(&self, s: super::Symbol, value: &RatFunc) -> Result<RatFunc, SymError> {
        fn apply(p: &LaurentPoly, s: super::Symbol, v: &RatFunc) -> Result<RatFunc, SymError> {
            let mut out = RatFunc::zero();
            for (e, c) in p.collect_in(s) {
                out = out + RatFunc::from_poly(c) * v.pow(e)?;
            }
            Ok(out)
        }
        apply(&self.num, s, value)?.checked_div(&apply(&self.den, s, value)?)
    }

    /// Exact value when every assigned symbol is rational, floating otherwise.
    pub fn evaluate(&self, a: &Assignment) -> Result<Evaluation, SymError> {
        if a.is_exact() {
            let d = eval_exact(&self.den, a)?;
            if d.is_zero() {
                return Err(SymError::Pole(self.den.to_string()));
            }
            let n = eval_exact(&self.num, a)?;
            return Ok(Evaluation { value: Value::Exact(n / d), condition: 1.0 });
        }
        let (d, dabs) = eval_float(&self.den, a)?;
        if d.norm() < POLE_FLOOR {
            return Err(SymError::Pole(self.den.to_string()));
        }
        let (n, nabs) = eval_float(&self.num, a)?;
        let cn = if n.norm() > 0.0 { nabs / n.norm() } else { 1.0 };
        let cd = dabs / d.norm();
        Ok(Evaluation { value: Value::Float(n / d), condition: cn.max(cd) })
    }

    /// Numerator and denominator as (power of X, coefficient) lists.
    pub fn coeffs_in_x(&self) -> (XCoeffs, XCoeffs) {
        let x = x_sym();
        (self.num.collect_in(x).into_iter().collect(), self.den.collect_in(x).into_iter().collect())
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_poly(LaurentPoly::int(n))
    }
}

impl From<Q> for RatFunc {
    fn from(c: Q) -> Self {
        RatFunc::from_poly(LaurentPoly::constant(c))
    }
}

fn add_impl(a: &RatFunc, b: &RatFunc, sign: i64) -> RatFunc {
    let bn = if sign < 0 { -&b.num } else { b.num.clone() };
    if a.den == b.den {
        return RatFunc { num: &a.num + bn, den: a.den.clone() };
    }
    if b.den.is_one() {
        return RatFunc { num: &a.num + bn * &a.den, den: a.den.clone() };
    }
    if a.den.is_one() {
        return RatFunc { num: &a.num * &b.den + bn, den: b.den.clone() };
    }
    RatFunc { num: &a.num * &b.den + bn * &a.den, den: &a.den * &b.den }
}

fn mul_impl(a: &RatFunc, b: &RatFunc) -> RatFunc {
    if a.num.is_zero() || b.num.is_zero() {
        return RatFunc::zero();
    }
    RatFunc { num: &a.num * &b.num, den: &a.den * &b.den }
}

macro_rules! ratop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                $body(&self, &rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: &RatFunc) -> RatFunc {
                $body(&self, rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                $body(self, &rhs)
            }
        }
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: &RatFunc) -> RatFunc {
                $body(self, rhs)
            }
        }
    };
}

ratop!(Add, add, |a, b| add_impl(a, b, 1));
ratop!(Sub, sub, |a, b| add_impl(a, b, -1));
ratop!(Mul, mul, mul_impl);
// Panics on division by zero; use `checked_div` to handle it.
ratop!(Div, div, |a: &RatFunc, b: &RatFunc| a.checked_div(b).expect("division by zero RatFunc"));

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -(self.clone())
    }
}

impl fmt::Display for RatFunc {
    /// Canonical serialization `(num)/(den)`, or `(num)` for polynomials.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduce();
        if r.den.is_one() {
            write!(f, "({})", r.num)
        } else {
            write!(f, "({})/({})", r.num, r.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

/// 1/(1 − value·q^{q_shift}·X^{x_power}); a zero value gives 1.
pub fn lfactor(value: &LaurentPoly, q_shift: i32, x_power: i32) -> Result<RatFunc, SymError> {
    if x_power <= 0 {
        return Err(SymError::NonPositiveXPower(x_power));
    }
    if value.is_zero() {
        return Ok(RatFunc::one());
    }
    let q = super::Symbol::new("q");
    let shift = Monomial::from_pairs(&[(q, q_shift), (x_sym(), x_power)])?;
    let den = LaurentPoly::one() - value.try_mul_monomial(&shift)?;
    RatFunc::new(LaurentPoly::one(), den)
}

/// Formal sum Σ_{m≥0} r^m = 1/(1 − r).
pub fn geometric_sum(ratio: &RatFunc) -> Result<RatFunc, SymError> {
    if ratio.is_one() {
        return Err(SymError::DegenerateSeries);
    }
    RatFunc::new(ratio.den.clone(), &ratio.den - &ratio.num)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat;

    fn v(n: &str) -> LaurentPoly {
        LaurentPoly::var(n)
    }

    #[test]
    fn lfactor_examples() {
        let l = lfactor(&LaurentPoly::one(), 0, 1).unwrap();
        assert_eq!(l.to_string(), "(1)/(1 - X^1)");
        let l = lfactor(&v("u"), 1, 3).unwrap();
        assert_eq!(l.to_string(), "(1)/(1 - X^3*q^1*u^1)");
        assert!(lfactor(&LaurentPoly::zero(), 0, 1).unwrap().is_one());
        assert_eq!(lfactor(&v("u"), 0, 0), Err(SymError::NonPositiveXPower(0)));
    }

    #[test]
    fn geometric_sum_examples() {
        let r = RatFunc::from_poly(v("u") * v("X"));
        assert_eq!(geometric_sum(&r).unwrap(), lfactor(&v("u"), 0, 1).unwrap());
        assert!(geometric_sum(&RatFunc::zero()).unwrap().is_one());
        assert_eq!(geometric_sum(&RatFunc::one()), Err(SymError::DegenerateSeries));
    }

    #[test]
    fn evaluate_examples() {
        let f = lfactor(&LaurentPoly::one(), 0, 1).unwrap();
        let e = f.evaluate(&Assignment::new().with("X", rat(1, 3))).unwrap();
        assert_eq!(e.value, Value::Exact(rat(3, 2)));
        assert!(matches!(f.evaluate(&Assignment::new().with("X", 1)), Err(SymError::Pole(_))));
        assert!(matches!(f.evaluate(&Assignment::new().with("X", 1.0)), Err(SymError::Pole(_))));
    }

    #[test]
    fn reduce_cancels_and_normalizes() {
        let x = v("X");
        let f = &x - LaurentPoly::one();
        let r = RatFunc::new(&f * &x * v("q").pow(-2), &f * LaurentPoly::int(3) * v("q")).unwrap();
        let c = r.reduce();
        assert_eq!(c.to_string(), "(1/3*X^1)/(q^3)");
        assert_eq!(c, r);
        assert_eq!(c.reduce().to_string(), c.to_string());
    }
}
