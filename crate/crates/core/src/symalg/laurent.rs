use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, SymError, Symbol};

pub type Q = BigRational;

pub fn rat(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Finite sum of rational multiples of Laurent monomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Q::from_integer(n.into()))
    }

    pub fn term(c: Q, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn var(name: &str) -> Self {
        Self::term(Q::one(), Monomial::var(Symbol::new(name), 1))
    }

    pub fn sym(s: Symbol) -> Self {
        Self::term(Q::one(), Monomial::var(s, 1))
    }

    /// `c * s1^e1 * s2^e2 ...`
    pub fn monomial(c: Q, pairs: &[(&str, i32)]) -> Result<Self, SymError> {
        let pairs: Vec<_> = pairs.iter().map(|&(n, e)| (Symbol::new(n), e)).collect();
        Ok(Self::term(c, Monomial::from_pairs(&pairs)?))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> Q {
        self.coeff(&Monomial::one())
    }

    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(&Q, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn trailing(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next()
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut v: Vec<Symbol> = self.terms.keys().flat_map(|m| m.symbols()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn try_mul_monomial(&self, m: &Monomial) -> Result<Self, SymError> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.try_mul(m)?, c.clone());
        }
        Ok(LaurentPoly { terms })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SymError> {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.try_mul(mb)?, ca * cb);
            }
        }
        Ok(out)
    }

    /// Power; negative exponents only for monomials.
    pub fn try_pow(&self, e: i32) -> Result<Self, SymError> {
        if e < 0 {
            let (c, m) = self.as_monomial().ok_or(SymError::NotInvertible)?;
            let inv = c.recip();
            let m = m.try_pow(e)?;
            let mut cc = Q::one();
            for _ in 0..e.unsigned_abs() {
                cc *= &inv;
            }
            return Ok(LaurentPoly::term(cc, m));
        }
        let mut base = self.clone();
        let mut acc = LaurentPoly::one();
        let mut k = e as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: i32) -> Self {
        self.try_pow(e).expect("LaurentPoly::pow")
    }

    /// Inverse in the Laurent ring (monomials only).
    pub fn inv(&self) -> Result<Self, SymError> {
        self.try_pow(-1)
    }

    /// Componentwise minimum exponent over all terms; multiplying by its inverse
    /// leaves a polynomial with no monomial factor.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|(_, e)| e >= 0))
    }

    /// Exponent range of `s` over the terms.
    pub fn degree_range(&self, s: Symbol) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.exp(s));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Coefficients of powers of `s`, other symbols kept in the coefficients.
    pub fn collect_in(&self, s: Symbol) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(s);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Replaces `s` by `value`; negative powers need an invertible value.
    pub fn subs(&self, s: Symbol, value: &LaurentPoly) -> Result<Self, SymError> {
        let mut cache: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(s);
            if e == 0 {
                out.add_term(rest, c.clone());
                continue;
            }
            if let std::collections::btree_map::Entry::Vacant(slot) = cache.entry(e) {
                slot.insert(value.try_pow(e)?);
            }
            let piece = cache[&e].try_mul_monomial(&rest)?.scale(c);
            out = out + piece;
        }
        Ok(out)
    }

    /// Exact quotient in the Laurent ring, `None` when `other` does not divide.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let ma = self.monomial_content();
        let mb = other.monomial_content();
        let a = self.try_mul_monomial(&ma.try_pow(-1).ok()?).ok()?;
        let b = other.try_mul_monomial(&mb.try_pow(-1).ok()?).ok()?;
        let q = super::gcd::poly_div_exact(&a, &b)?;
        q.try_mul_monomial(&ma.try_div(&mb).ok()?).ok()
    }

    pub fn map_coeffs(&self, f: impl Fn(&Q) -> Q) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

impl From<i64> for LaurentPoly {
    fn from(n: i64) -> Self {
        LaurentPoly::int(n)
    }
}

impl From<Q> for LaurentPoly {
    fn from(c: Q) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -(self.clone())
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(self, &rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(self.clone(), &rhs)
            }
        }
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(self.clone(), rhs)
            }
        }
    };
}

binop!(Add, add, |mut a: LaurentPoly, b: &LaurentPoly| {
    a += b;
    a
});
binop!(Sub, sub, |mut a: LaurentPoly, b: &LaurentPoly| {
    a -= b;
    a
});
// Panics on exponent overflow; use `try_mul` to handle it.
binop!(Mul, mul, |a: LaurentPoly, b: &LaurentPoly| a.try_mul(b).expect("exponent overflow in LaurentPoly product"));

fn fmt_coeff(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in ascending monomial order with explicit exponents, e.g. `1 - X^3*q^1*u^1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&fmt_coeff(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_coeff(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> LaurentPoly {
        LaurentPoly::var(n)
    }

    #[test]
    fn display_is_sorted_with_explicit_exponents() {
        let p = LaurentPoly::one() - v("q") * v("u") * v("X").pow(3);
        assert_eq!(p.to_string(), "1 - X^3*q^1*u^1");
        let r = LaurentPoly::monomial(rat(-3, 2), &[("t3", -1)]).unwrap();
        assert_eq!(r.to_string(), "-3/2*t3^-1");
    }

    #[test]
    fn substitution_handles_negative_powers() {
        let p = v("t1") + v("t3").pow(-2);
        let r = p.subs(Symbol::new("t3"), &v("t1").pow(-1)).unwrap();
        assert_eq!(r, v("t1") + v("t1").pow(2));
        assert!(p.subs(Symbol::new("t3"), &(v("t1") + v("q"))).is_err());
    }

    #[test]
    fn exact_division_in_laurent_ring() {
        let t1 = v("t1");
        let t3 = v("t3");
        let num = t1.pow(4) - t3.pow(4);
        let q = num.div_exact(&(&t1 - &t3)).unwrap();
        assert_eq!(q * (&t1 - &t3), num);
        let shifted = (&t1 - &t3) * v("q").pow(-3);
        assert_eq!(num.div_exact(&shifted).unwrap() * shifted, num);
        assert!(num.div_exact(&(&t1 + v("q"))).is_none());
    }
}
