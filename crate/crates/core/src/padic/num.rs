use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::PadicError;
use crate::symalg::Q;

pub(crate) fn pow_u64(p: u32, e: u32) -> u64 {
    (p as u64).checked_pow(e).expect("p-adic modulus exceeds u64")
}

pub(crate) fn inv_mod(a: u64, m: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(e.gcd, 1, "{a} not invertible mod {m}");
    e.x.rem_euclid(m as i128) as u64
}

/// Largest relative precision whose modulus keeps products inside u128.
pub fn max_precision(p: u32) -> u32 {
    let mut e = 0;
    let mut m: u64 = 1;
    while let Some(next) = m.checked_mul(p as u64) {
        if next > (1u64 << 62) {
            break;
        }
        m = next;
        e += 1;
    }
    e
}

/// Valuation with an explicit infinity for exact zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, _) => Ordering::Greater,
            (_, Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    /// ϖ^v·(unit + p^rel·o), unit coprime to p.
    Ball { unit: u64, rel: u32 },
    /// Some element of p^v; the value itself is not resolved.
    Small,
    Zero,
}

/// A p-adic number in Q_p known to finite precision (a ball), or exact zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PadicNum {
    p: u32,
    v: i64,
    kind: Kind,
}

impl PadicNum {
    pub fn zero(p: u32) -> PadicNum {
        PadicNum { p, v: 0, kind: Kind::Zero }
    }

    /// The ball p^abs·o of elements with unresolved digits.
    pub fn small(p: u32, abs: i64) -> PadicNum {
        PadicNum { p, v: abs, kind: Kind::Small }
    }

    /// ϖ^v·unit with `rel` known digits; `unit` is reduced and must be prime to p.
    pub fn from_parts(p: u32, v: i64, unit: u64, rel: u32) -> Result<PadicNum, PadicError> {
        if rel == 0 || rel > max_precision(p) {
            return Err(PadicError::BadPrecision(rel));
        }
        let m = pow_u64(p, rel);
        let unit = unit % m;
        if unit.is_multiple_of(p as u64) {
            return Err(PadicError::NotAUnit);
        }
        Ok(PadicNum { p, v, kind: Kind::Ball { unit, rel } })
    }

    pub fn from_int(p: u32, n: i64, rel: u32) -> PadicNum {
        PadicNum::from_rational(p, &Q::from_integer(n.into()), rel)
    }

    /// ϖ^k exactly (to `rel` digits).
    pub fn uniformizer_pow(p: u32, k: i64, rel: u32) -> PadicNum {
        PadicNum { p, v: k, kind: Kind::Ball { unit: 1, rel } }
    }

    pub fn from_rational(p: u32, x: &Q, rel: u32) -> PadicNum {
        if x.is_zero() {
            return PadicNum::zero(p);
        }
        let pb = BigInt::from(p);
        let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
        let mut v = 0i64;
        while (&n % &pb).is_zero() {
            n /= &pb;
            v += 1;
        }
        while (&d % &pb).is_zero() {
            d /= &pb;
            v -= 1;
        }
        let m = pow_u64(p, rel);
        let mb = BigInt::from(m);
        let nn = n.mod_floor(&mb).to_u64().expect("reduced");
        let dd = d.abs().mod_floor(&mb).to_u64().expect("reduced");
        let mut unit = (nn as u128 * inv_mod(dd, m) as u128 % m as u128) as u64;
        if d.is_negative() {
            unit = (m - unit) % m;
        }
        PadicNum { p, v, kind: Kind::Ball { unit, rel } }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn is_exact_zero(&self) -> bool {
        self.kind == Kind::Zero
    }

    /// True when the value is known to be nonzero.
    pub fn is_resolved(&self) -> bool {
        matches!(self.kind, Kind::Ball { .. })
    }

    /// Absolute precision: the value is known modulo p^abs.
    pub fn abs_precision(&self) -> Option<i64> {
        match self.kind {
            Kind::Ball { rel, .. } => Some(self.v + rel as i64),
            Kind::Small => Some(self.v),
            Kind::Zero => None,
        }
    }

    pub fn valuation(&self) -> Result<Valuation, PadicError> {
        match self.kind {
            Kind::Ball { .. } => Ok(Valuation::Finite(self.v)),
            Kind::Zero => Ok(Valuation::Infinite),
            Kind::Small => Err(PadicError::PrecisionExhausted),
        }
    }

    /// A lower bound on the valuation that holds for every point of the ball.
    pub fn valuation_lower_bound(&self) -> Valuation {
        match self.kind {
            Kind::Zero => Valuation::Infinite,
            _ => Valuation::Finite(self.v),
        }
    }

    /// Unit part and its relative precision.
    pub fn unit(&self) -> Option<(u64, u32)> {
        match self.kind {
            Kind::Ball { unit, rel } => Some((unit, rel)),
            _ => None,
        }
    }

    /// Multiplication by ϖ^k (exact).
    pub fn shift(&self, k: i64) -> PadicNum {
        match self.kind {
            Kind::Zero => *self,
            _ => PadicNum { v: self.v + k, ..*self },
        }
    }

    /// Residue modulo p^e of an integral element.
    pub fn residue(&self, e: u32) -> Result<u64, PadicError> {
        match self.kind {
            Kind::Zero => Ok(0),
            Kind::Small if self.v >= e as i64 => Ok(0),
            Kind::Small => Err(PadicError::PrecisionExhausted),
            Kind::Ball { unit, rel } => {
                if self.v < 0 {
                    return Err(PadicError::NotIntegral);
                }
                if self.v >= e as i64 {
                    return Ok(0);
                }
                if self.v + (rel as i64) < e as i64 {
                    return Err(PadicError::PrecisionExhausted);
                }
                let m = pow_u64(self.p, e);
                Ok((unit as u128 * pow_u64(self.p, self.v as u32) as u128 % m as u128) as u64)
            }
        }
    }

    fn check(&self, other: &PadicNum) {
        assert_eq!(self.p, other.p, "mixed primes in p-adic arithmetic");
    }

    /// Builds the ball ϖ^base·(n + p^width·o) for an integer n in [0, p^width).
    fn normalize(p: u32, base: i64, n: u128, width: u32) -> PadicNum {
        if n == 0 {
            return PadicNum::small(p, base + width as i64);
        }
        let mut n = n;
        let mut shift = 0u32;
        while n.is_multiple_of(p as u128) {
            n /= p as u128;
            shift += 1;
        }
        let rel = width - shift;
        PadicNum { p, v: base + shift as i64, kind: Kind::Ball { unit: n as u64, rel } }
    }

    pub fn add(&self, other: &PadicNum) -> PadicNum {
        self.check(other);
        if self.is_exact_zero() {
            return *other;
        }
        if other.is_exact_zero() {
            return *self;
        }
        let abs = self.abs_precision().unwrap().min(other.abs_precision().unwrap());
        let base = self.v.min(other.v);
        if abs <= base {
            return PadicNum::small(self.p, abs);
        }
        let width = (abs - base) as u32;
        let m = pow_u64(self.p, width) as u128;
        let digits = |x: &PadicNum| -> u128 {
            match x.kind {
                Kind::Ball { unit, .. } if x.v < abs => {
                    let s = pow_u64(x.p, (x.v - base) as u32) as u128;
                    unit as u128 % m * s % m
                }
                _ => 0,
            }
        };
        let n = (digits(self) + digits(other)) % m;
        PadicNum::normalize(self.p, base, n, width)
    }

    pub fn neg(&self) -> PadicNum {
        match self.kind {
            Kind::Ball { unit, rel } => {
                let m = pow_u64(self.p, rel);
                PadicNum { kind: Kind::Ball { unit: m - unit, rel }, ..*self }
            }
            _ => *self,
        }
    }

    pub fn sub(&self, other: &PadicNum) -> PadicNum {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PadicNum) -> PadicNum {
        self.check(other);
        match (self.kind, other.kind) {
            (Kind::Zero, _) | (_, Kind::Zero) => PadicNum::zero(self.p),
            (Kind::Ball { unit: a, rel: ra }, Kind::Ball { unit: b, rel: rb }) => {
                let rel = ra.min(rb);
                let m = pow_u64(self.p, rel) as u128;
                let unit = (a as u128 % m * (b as u128 % m) % m) as u64;
                PadicNum { p: self.p, v: self.v + other.v, kind: Kind::Ball { unit, rel } }
            }
            _ => PadicNum::small(self.p, self.v + other.v),
        }
    }

    pub fn div(&self, other: &PadicNum) -> Result<PadicNum, PadicError> {
        self.check(other);
        let (b, rb) = match other.kind {
            Kind::Zero => return Err(PadicError::DivisionByZero),
            Kind::Small => return Err(PadicError::PrecisionExhausted),
            Kind::Ball { unit, rel } => (unit, rel),
        };
        Ok(match self.kind {
            Kind::Zero => *self,
            Kind::Small => PadicNum::small(self.p, self.v - other.v),
            Kind::Ball { unit: a, rel: ra } => {
                let rel = ra.min(rb);
                let m = pow_u64(self.p, rel);
                let unit = ((a % m) as u128 * inv_mod(b % m, m) as u128 % m as u128) as u64;
                PadicNum { p: self.p, v: self.v - other.v, kind: Kind::Ball { unit, rel } }
            }
        })
    }

    /// Truncates the relative precision to at most `rel` digits.
    pub fn truncate(&self, rel: u32) -> PadicNum {
        match self.kind {
            Kind::Ball { unit, rel: r } if r > rel => {
                let m = pow_u64(self.p, rel);
                PadicNum { kind: Kind::Ball { unit: unit % m, rel }, ..*self }
            }
            _ => *self,
        }
    }

    /// A rational representative of the ball (exact when the value is).
    pub fn to_rational(&self) -> Q {
        match self.kind {
            Kind::Ball { unit, .. } => {
                let pv = Q::from_integer(BigInt::from(self.p)).pow(self.v as i32);
                pv * Q::from_integer(BigInt::from(unit))
            }
            _ => Q::zero(),
        }
    }
}

impl fmt::Display for PadicNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Zero => write!(f, "0"),
            Kind::Small => write!(f, "O({}^{})", self.p, self.v),
            Kind::Ball { unit, rel } => write!(f, "{}^{}*{} + O({}^{})", self.p, self.v, unit, self.p, self.v + rel as i64),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat;

    #[test]
    fn rational_embedding() {
        let x = PadicNum::from_rational(3, &rat(-9, 2), 5);
        assert_eq!(x.valuation().unwrap(), Valuation::Finite(2));
        // −1/2 ≡ 121 mod 243.
        assert_eq!(x.unit(), Some((121, 5)));
    }

    #[test]
    fn cancellation_loses_digits() {
        let a = PadicNum::from_int(5, 26, 3);
        let b = PadicNum::from_int(5, 1, 3);
        let d = a.sub(&b);
        assert_eq!(d.valuation().unwrap(), Valuation::Finite(2));
        assert_eq!(d.abs_precision(), Some(3));
        let e = a.sub(&PadicNum::from_int(5, 26, 3));
        assert_eq!(e.valuation(), Err(PadicError::PrecisionExhausted));
        assert_eq!(e.abs_precision(), Some(3));
    }

    #[test]
    fn exact_zero_absorbs() {
        let z = PadicNum::zero(3);
        let x = PadicNum::from_int(3, 7, 4);
        assert!(z.mul(&x).is_exact_zero());
        assert_eq!(z.add(&x), x);
        assert_eq!(z.valuation().unwrap(), Valuation::Infinite);
        assert_eq!(x.div(&z), Err(PadicError::DivisionByZero));
    }

    #[test]
    fn division_inverts_multiplication() {
        let x = PadicNum::from_rational(7, &rat(5, 49), 6);
        let y = PadicNum::from_rational(7, &rat(-3, 7), 6);
        let q = x.mul(&y).div(&y).unwrap();
        assert_eq!(q, x);
    }

    #[test]
    fn residue_needs_integrality_and_precision() {
        let x = PadicNum::from_int(3, 10, 2);
        assert_eq!(x.residue(2), Ok(1));
        assert_eq!(x.residue(3), Err(PadicError::PrecisionExhausted));
        assert_eq!(PadicNum::from_rational(3, &rat(1, 3), 2).residue(1), Err(PadicError::NotIntegral));
        assert_eq!(PadicNum::small(3, 4).residue(3), Ok(0));
    }
}
