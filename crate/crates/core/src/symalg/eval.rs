use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use super::{LaurentPoly, SymError, Symbol, Q};

/// Below this magnitude a floating denominator counts as a pole.
pub const POLE_FLOOR: f64 = 1e-12;

#[derive(Clone, PartialEq, Debug)]
pub enum Value {
    Exact(Q),
    Float(Complex64),
}

impl Value {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Value::Exact(q) => Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0),
            Value::Float(z) => *z,
        }
    }

    pub fn as_exact(&self) -> Option<&Q> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Float(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{q}"),
            Value::Float(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

impl From<Q> for Value {
    fn from(q: Q) -> Self {
        Value::Exact(q)
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::Exact(Q::from_integer(n.into()))
    }
}

impl From<Complex64> for Value {
    fn from(z: Complex64) -> Self {
        Value::Float(z)
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(Complex64::new(x, 0.0))
    }
}

/// Map from symbols to numeric values.
#[derive(Clone, Default, Debug)]
pub struct Assignment(BTreeMap<Symbol, Value>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, v: impl Into<Value>) -> Self {
        self.0.insert(Symbol::new(name), v.into());
        self
    }

    pub fn set(&mut self, name: &str, v: impl Into<Value>) {
        self.0.insert(Symbol::new(name), v.into());
    }

    pub fn get(&self, s: Symbol) -> Option<&Value> {
        self.0.get(&s)
    }

    pub fn is_exact(&self) -> bool {
        self.0.values().all(|v| matches!(v, Value::Exact(_)))
    }
}

fn qpow(x: &Q, e: i32) -> Result<Q, SymError> {
    if e < 0 && x.is_zero() {
        return Err(SymError::ZeroToNegativePower);
    }
    let mut acc = Q::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    Ok(if e < 0 { acc.recip() } else { acc })
}

/// Exact evaluation; errors if a symbol is unassigned or non-exact.
pub fn eval_exact(p: &LaurentPoly, a: &Assignment) -> Result<Q, SymError> {
    let mut total = Q::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (s, e) in m.iter() {
            match a.get(s) {
                Some(Value::Exact(x)) => t *= qpow(x, e)?,
                Some(Value::Float(_)) => return Err(SymError::NotExact(s.name().into())),
                None => return Err(SymError::Unassigned(s.name().into())),
            }
        }
        total += t;
    }
    Ok(total)
}

/// Floating evaluation; returns the value and the sum of absolute term values.
pub fn eval_float(p: &LaurentPoly, a: &Assignment) -> Result<(Complex64, f64), SymError> {
    let mut total = Complex64::zero();
    let mut abs_sum = 0.0;
    for (m, c) in p.terms() {
        let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        for (s, e) in m.iter() {
            let x = a.get(s).ok_or_else(|| SymError::Unassigned(s.name().into()))?.to_complex();
            if e < 0 && x.norm() == 0.0 {
                return Err(SymError::ZeroToNegativePower);
            }
            t *= x.powi(e);
        }
        abs_sum += t.norm();
        total += t;
    }
    Ok((total, abs_sum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat;

    #[test]
    fn exact_and_float_agree() {
        let p = LaurentPoly::var("q").pow(-2) * LaurentPoly::int(3) + LaurentPoly::var("t1");
        let a = Assignment::new().with("q", 3).with("t1", rat(1, 2));
        assert_eq!(eval_exact(&p, &a).unwrap(), rat(5, 6));
        let (z, _) = eval_float(&p, &a).unwrap();
        assert!((z.re - 5.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn missing_symbol_reported() {
        let p = LaurentPoly::var("u");
        assert_eq!(eval_exact(&p, &Assignment::new()), Err(SymError::Unassigned("u".into())));
    }
}
