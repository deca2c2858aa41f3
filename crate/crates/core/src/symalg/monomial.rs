use std::cmp::Ordering;
use std::fmt;

use super::{SymError, Symbol};

/// Product of symbol powers with nonzero integer exponents, sorted by symbol.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Symbol, i32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol, e: i32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(s, e)])
        }
    }

    /// Builds a monomial from arbitrary (symbol, exponent) pairs, merging repeats.
    pub fn from_pairs(pairs: &[(Symbol, i32)]) -> Result<Monomial, SymError> {
        let mut m = Monomial::one();
        for &(s, e) in pairs {
            m = m.try_mul(&Monomial::var(s, e))?;
        }
        Ok(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, s: Symbol) -> i32 {
        match self.0.binary_search_by(|(t, _)| t.cmp(&s)) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, i32)> + '_ {
        self.0.iter().copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.0.iter().map(|&(s, _)| s)
    }

    /// Total degree.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    fn merge(&self, other: &Monomial, f: impl Fn(i32, i32) -> Option<i32>) -> Result<Monomial, SymError> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (s, ea, eb) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                i += 1;
                (a[i - 1].0, a[i - 1].1, 0)
            } else if i == a.len() || b[j].0 < a[i].0 {
                j += 1;
                (b[j - 1].0, 0, b[j - 1].1)
            } else {
                i += 1;
                j += 1;
                (a[i - 1].0, a[i - 1].1, b[j - 1].1)
            };
            let e = f(ea, eb).ok_or(SymError::ExponentOverflow)?;
            if e != 0 {
                out.push((s, e));
            }
        }
        Ok(Monomial(out))
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial, SymError> {
        if other.is_one() {
            return Ok(self.clone());
        }
        if self.is_one() {
            return Ok(other.clone());
        }
        self.merge(other, |a, b| a.checked_add(b))
    }

    pub fn try_div(&self, other: &Monomial) -> Result<Monomial, SymError> {
        self.merge(other, |a, b| a.checked_sub(b))
    }

    pub fn try_pow(&self, e: i32) -> Result<Monomial, SymError> {
        let mut out = Vec::with_capacity(self.0.len());
        for &(s, x) in &self.0 {
            let y = x.checked_mul(e).ok_or(SymError::ExponentOverflow)?;
            if y != 0 {
                out.push((s, y));
            }
        }
        Ok(Monomial(out))
    }

    /// Componentwise minimum of exponents, absent symbols counting as 0.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| Some(a.min(b))).expect("min cannot overflow")
    }

    /// Componentwise maximum of exponents, absent symbols counting as 0.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| Some(a.max(b))).expect("max cannot overflow")
    }

    /// True when every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&(_, e)| e > 0)
    }

    /// Polynomial divisibility: other / self has nonnegative exponents.
    pub fn divides(&self, other: &Monomial) -> bool {
        match other.try_div(self) {
            Ok(m) => m.is_polynomial(),
            Err(_) => false,
        }
    }

    /// Drops `s`, returning its exponent and the rest.
    pub fn split_off(&self, s: Symbol) -> (i32, Monomial) {
        let e = self.exp(s);
        let rest = Monomial(self.0.iter().copied().filter(|&(t, _)| t != s).collect());
        (e, rest)
    }
}

impl Ord for Monomial {
    /// Lexicographic order, the smallest symbol being the most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(sa, ea)), Some(&(sb, eb))) => match sa.cmp(&sb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{s}^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
