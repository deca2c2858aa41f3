//! Local zeta integral of the G2 construction for nontempered
//! π = Ind(|·|^α ⊗ μ2 ⊗ |·|^{-α}) of GL3, and the adjoint L-factors it is
//! compared with. Everything is a rational function of X = q^{-s}.
//!
//! Symbols: `q`; `t1` = q^{-α} (the Satake value of |·|^α); `u` = χ(ϖ);
//! `v` = μ2(ϖ); `Dc` = vol(K_c)·vol(1 + p^c)·W_c(1).

mod gamma;
mod special;
mod suite;

pub use gamma::{gamma_assembly, intertwining_constant, tate_gamma, Factored, GammaReport};
pub use special::{
    normalized_ratio, normalized_ratio_display, ratio_denominator, scan_no_zeros, zeta_special_case, zeta_special_display,
    ScanReport, SpecialCase,
};
pub use suite::{case_checks, case_specs, gamma_checks, ZetaCase};

use crate::padic::{pow_u64, MultChar};
use crate::symalg::{var, LaurentPoly, Monomial, RatFunc, SymError, Symbol, Q};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// L(a·s + b, ·) of an unramified character with value `value` at ϖ:
/// 1/(1 − value·q^{-b}·X^a). Negative `a` is allowed.
pub fn l_unram(value: &LaurentPoly, a: i32, b: i32) -> Result<RatFunc, ZetaError> {
    let m = Monomial::from_pairs(&[(Symbol::new("q"), -b), (Symbol::new("X"), a)])?;
    let den = LaurentPoly::one() - value.try_mul_monomial(&m)?;
    Ok(RatFunc::new(LaurentPoly::one(), den)?)
}

/// A character of Q_p^×: its phases on (Z/p^C)^× as fractions of a turn, and
/// its value at ϖ.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalChar {
    phases: Vec<Q>,
    pub at_varpi: LaurentPoly,
}

impl LocalChar {
    fn unramified(n_units: usize, at_varpi: LaurentPoly) -> LocalChar {
        LocalChar { phases: vec![Q::from_integer(0.into()); n_units], at_varpi }
    }

    fn from_mult(mu: &MultChar, p: u32, big_c: u32, at_varpi: LaurentPoly) -> LocalChar {
        let m = pow_u64(p, big_c);
        let n = mu.field_order() as i64;
        let phases = (0..m)
            .filter(|r| r % p as u64 != 0)
            .map(|r| Q::new(mu.unit_exponent(r).expect("unit residue").into(), n.into()))
            .collect();
        LocalChar { phases, at_varpi }
    }

    pub fn mul(&self, o: &LocalChar) -> LocalChar {
        LocalChar {
            phases: self.phases.iter().zip(&o.phases).map(|(a, b)| a + b).collect(),
            at_varpi: &self.at_varpi * &o.at_varpi,
        }
    }

    pub fn inv(&self) -> LocalChar {
        LocalChar { phases: self.phases.iter().map(|a| -a).collect(), at_varpi: self.at_varpi.pow(-1) }
    }

    pub fn is_unramified(&self) -> bool {
        self.phases.iter().all(|a| a.is_integer())
    }

    /// L(a·s + b, ·): 1 when ramified.
    pub fn l(&self, a: i32, b: i32) -> Result<RatFunc, ZetaError> {
        if self.is_unramified() {
            l_unram(&self.at_varpi, a, b)
        } else {
            Ok(RatFunc::one())
        }
    }
}

/// π = Ind(|·|^α ⊗ μ2 ⊗ |·|^{-α}) with 0 < α < 1/2, twisted by χ.
/// `None` means unramified.
#[derive(Clone, Debug)]
pub struct NontemperedSpec {
    pub p: u32,
    pub alpha: Q,
    pub mu2: Option<MultChar>,
    pub chi: Option<MultChar>,
}

impl NontemperedSpec {
    pub fn validate(&self) -> Result<ZetaCase, ZetaError> {
        let half = Q::new(1.into(), 2.into());
        if !(self.alpha > Q::from_integer(0.into()) && self.alpha < half) {
            return Err(ZetaError::InvalidSpec("α must lie in (0, 1/2)".into()));
        }
        for m in self.mu2.iter().chain(self.chi.iter()) {
            if m.p != self.p {
                return Err(ZetaError::InvalidSpec("characters over different primes".into()));
            }
        }
        match (&self.mu2, &self.chi) {
            (None, None) => Err(ZetaError::InvalidSpec("π and χ are both unramified".into())),
            (None, Some(_)) => Ok(ZetaCase::UnramChi),
            (Some(_), Some(_)) => Ok(ZetaCase::BothRam),
            (Some(_), None) => Ok(ZetaCase::RamMu2),
        }
    }

    /// (χ, [μ1, μ2, μ3]) as local characters on a common modulus.
    pub fn characters(&self) -> (LocalChar, [LocalChar; 3]) {
        let big_c = self.mu2.iter().chain(self.chi.iter()).map(|m| m.c).max().unwrap_or(1);
        let n_units = (pow_u64(self.p, big_c) - pow_u64(self.p, big_c - 1)) as usize;
        let make = |m: &Option<MultChar>, name: &str| match m {
            Some(m) => LocalChar::from_mult(m, self.p, big_c, var(name)),
            None => LocalChar::unramified(n_units, var(name)),
        };
        let t1 = var("t1");
        let mus = [
            LocalChar::unramified(n_units, t1.clone()),
            make(&self.mu2, "v"),
            LocalChar::unramified(n_units, t1.pow(-1)),
        ];
        (make(&self.chi, "u"), mus)
    }
}

/// L(a·s + b, π, Ad × χ) = L(χπ × π̃)/L(χ) from the nine Rankin–Selberg factors.
pub fn adjoint_lfactor_rs(spec: &NontemperedSpec, a: i32, b: i32) -> Result<RatFunc, ZetaError> {
    let (chi, mus) = spec.characters();
    let mut acc = RatFunc::one();
    for mi in &mus {
        for mj in &mus {
            acc = &acc * &chi.mul(mi).mul(&mj.inv()).l(a, b)?;
        }
    }
    Ok(acc.checked_div(&chi.l(a, b)?)?)
}

/// The case-by-case product of abelian factors.
pub fn adjoint_lfactor_catalog(spec: &NontemperedSpec, a: i32, b: i32) -> Result<RatFunc, ZetaError> {
    let (chi, mus) = spec.characters();
    let abs_alpha = &mus[0];
    match spec.validate()? {
        ZetaCase::UnramChi => Ok(RatFunc::one()),
        ZetaCase::BothRam => {
            let mu2 = &mus[1];
            let mut acc = RatFunc::one();
            for base in [chi.mul(&mu2.inv()), chi.mul(mu2)] {
                acc = &acc * &base.mul(abs_alpha).l(a, b)?;
                acc = &acc * &base.mul(&abs_alpha.inv()).l(a, b)?;
            }
            Ok(acc)
        }
        ZetaCase::RamMu2 => {
            let l = chi.l(a, b)?;
            let sq = abs_alpha.mul(abs_alpha);
            Ok(&(&(&l * &l) * &chi.mul(&sq).l(a, b)?) * &chi.mul(&sq.inv()).l(a, b)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat;

    fn spec(mu2: Option<MultChar>, chi: Option<MultChar>) -> NontemperedSpec {
        NontemperedSpec { p: 5, alpha: rat(1, 4), mu2, chi }
    }

    #[test]
    fn catalog_matches_rankin_selberg() {
        let m = |i| Some(MultChar::new(5, 1, i, (0, 1)).unwrap());
        for s in [spec(None, m(1)), spec(m(1), m(2)), spec(m(1), m(3)), spec(m(2), None), spec(m(1), m(1))] {
            assert_eq!(adjoint_lfactor_catalog(&s, 1, 0).unwrap(), adjoint_lfactor_rs(&s, 1, 0).unwrap(), "{s:?}");
        }
    }

    #[test]
    fn displayed_factors() {
        let m = |i| Some(MultChar::new(5, 1, i, (0, 1)).unwrap());
        assert!(adjoint_lfactor_catalog(&spec(None, m(1)), 1, 0).unwrap().is_one());
        // χ ramified with χμ2^{±1} ramified: μ2 of order 4, χ of order 2 on units.
        assert!(adjoint_lfactor_catalog(&spec(m(1), m(2)), 1, 0).unwrap().is_one());
        // χ = μ2⁻¹ on units: two factors survive.
        let two = adjoint_lfactor_catalog(&spec(m(1), m(3)), 1, 0).unwrap();
        assert!(!two.is_one());
        let (u, t1) = (var("u"), var("t1"));
        let want = &l_unram(&(&u * &var("v") * &t1), 1, 0).unwrap() * &l_unram(&(&u * &var("v") * t1.pow(-1)), 1, 0).unwrap();
        assert_eq!(two, want);
        let four = adjoint_lfactor_catalog(&spec(m(2), None), 1, 0).unwrap();
        let lu = l_unram(&u, 1, 0).unwrap();
        let want = &(&(&lu * &lu) * &l_unram(&(&u * t1.pow(2)), 1, 0).unwrap()) * &l_unram(&(&u * t1.pow(-2)), 1, 0).unwrap();
        assert_eq!(four, want);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(spec(None, None).validate().is_err());
        let mut s = spec(Some(MultChar::new(5, 1, 1, (0, 1)).unwrap()), None);
        s.alpha = rat(1, 2);
        assert!(s.validate().is_err());
        s.alpha = rat(1, 3);
        s.chi = Some(MultChar::new(3, 1, 1, (0, 1)).unwrap());
        assert!(s.validate().is_err());
    }
}
