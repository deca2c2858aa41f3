//! Gamma factors for unramified data. The zeta-integral side is assembled from
//! the Gindikin–Karpelevich constant of M_w̃ and the unramified zeta value
//! Z° = L(3s−1, Ad×χ)/(L(3s,χ)L(6s−2,χ²)L(9s−3,χ³)), which is taken as input.

use std::collections::BTreeMap;
use std::fmt;

use crate::g2::{coroot_exponents, pairing, Root, RootDatum};
use crate::symalg::{var, LaurentPoly, Monomial, RatFunc, Symbol, Q};

use super::ZetaError;

/// Roots of U^α, the unipotent radical of P.
const U_ALPHA: [Root; 5] = [Root::new(0, 1), Root::new(1, 1), Root::new(2, 1), Root::new(3, 1), Root::new(3, 2)];

/// unit·Π (1 − c·m)^{e}, each binomial stored under the smaller of (m, c) and
/// (m⁻¹, c⁻¹) so that equal factors cancel without expanding anything.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    unit: LaurentPoly,
    factors: BTreeMap<(Monomial, Q), i32>,
}

impl Factored {
    pub fn one() -> Factored {
        Factored { unit: LaurentPoly::one(), factors: BTreeMap::new() }
    }

    /// (1 − v)^e for a single-term v.
    fn binomial(v: &LaurentPoly, e: i32) -> Result<Factored, ZetaError> {
        let (c, m) = v.as_monomial().ok_or_else(|| ZetaError::InvalidSpec(format!("{v} is not a single term")))?;
        let mut out = Factored::one();
        if m.is_one() {
            let k = LaurentPoly::one() - v;
            if k.is_zero() {
                return Err(ZetaError::InvalidSpec("factor 1 − 1".into()));
            }
            out.unit = k.try_pow(e)?;
            return Ok(out);
        }
        let key = (m.clone(), c.clone());
        let flipped = (m.try_pow(-1)?, c.recip());
        if flipped < key {
            // 1 − v = −v·(1 − v⁻¹)
            out.unit = (-v).try_pow(e)?;
            out.factors.insert(flipped, e);
        } else {
            out.factors.insert(key, e);
        }
        Ok(out)
    }

    /// L(a·s + b) at value v: (1 − v·q^{-b}·X^a)⁻¹.
    pub fn l(value: &LaurentPoly, a: i32, b: i32) -> Result<Factored, ZetaError> {
        let m = Monomial::from_pairs(&[(Symbol::new("q"), -b), (Symbol::new("X"), a)])?;
        Factored::binomial(&value.try_mul_monomial(&m)?, -1)
    }

    pub fn mul(&self, o: &Factored) -> Result<Factored, ZetaError> {
        let mut out = Factored { unit: self.unit.try_mul(&o.unit)?, factors: self.factors.clone() };
        for (k, e) in &o.factors {
            let slot = out.factors.entry(k.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                out.factors.remove(k);
            }
        }
        Ok(out)
    }

    pub fn inv(&self) -> Result<Factored, ZetaError> {
        Ok(Factored { unit: self.unit.inv()?, factors: self.factors.iter().map(|(k, e)| (k.clone(), -e)).collect() })
    }

    pub fn div(&self, o: &Factored) -> Result<Factored, ZetaError> {
        self.mul(&o.inv()?)
    }

    pub fn is_one(&self) -> bool {
        self.unit.is_one() && self.factors.is_empty()
    }

    pub fn to_ratfunc(&self) -> Result<RatFunc, ZetaError> {
        let (mut num, mut den) = (LaurentPoly::one(), LaurentPoly::one());
        for ((m, c), e) in &self.factors {
            let f = LaurentPoly::one() - LaurentPoly::term(c.clone(), m.clone());
            if *e > 0 {
                num = num.try_mul(&f.try_pow(*e)?)?;
            } else {
                den = den.try_mul(&f.try_pow(-e)?)?;
            }
        }
        Ok(RatFunc::new(num.try_mul(&self.unit)?, den)?)
    }
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.unit)?;
        for ((m, c), e) in &self.factors {
            write!(f, "·(1 - {})^{e}", LaurentPoly::term(c.clone(), m.clone()))?;
        }
        Ok(())
    }
}

/// L at a·s + b, or at a·(1−s) + b when `reflect`.
fn l_at(value: &LaurentPoly, a: i32, b: i32, reflect: bool) -> Result<Factored, ZetaError> {
    if reflect {
        Factored::l(value, -a, a + b)
    } else {
        Factored::l(value, a, b)
    }
}

fn tate(value: &LaurentPoly, a: i32, b: i32) -> Result<Factored, ZetaError> {
    Factored::l(&value.inv()?, -a, 1 - b)?.div(&Factored::l(value, a, b)?)
}

/// γ(a·s + b, ν) = L(1 − a·s − b, ν⁻¹)/L(a·s + b, ν) for ν unramified with ν(ϖ) = `value`.
pub fn tate_gamma(value: &LaurentPoly, a: i32, b: i32) -> Result<RatFunc, ZetaError> {
    tate(value, a, b)?.to_ratfunc()
}

fn adjoint_values(mu: &[LaurentPoly; 3], u: &LaurentPoly) -> Vec<LaurentPoly> {
    let mut out = Vec::with_capacity(9);
    for mi in mu {
        for mj in mu {
            out.push(u * mi * mj.pow(-1));
        }
    }
    out
}

fn product(it: impl IntoIterator<Item = Result<Factored, ZetaError>>) -> Result<Factored, ZetaError> {
    it.into_iter().try_fold(Factored::one(), |acc, f| acc.mul(&f?))
}

/// L(a·s + b, π, Ad×χ) for Satake parameters `mu` and χ(ϖ) = `u`.
fn adjoint_l(mu: &[LaurentPoly; 3], u: &LaurentPoly, a: i32, b: i32, reflect: bool) -> Result<Factored, ZetaError> {
    product(adjoint_values(mu, u).iter().map(|v| l_at(v, a, b, reflect)))?.div(&l_at(u, a, b, reflect)?)
}

/// Z°(s): L(3s−1, Ad×χ)/(L(3s,χ)L(6s−2,χ²)L(9s−3,χ³)).
fn unramified_zeta(mu: &[LaurentPoly; 3], u: &LaurentPoly, reflect: bool) -> Result<Factored, ZetaError> {
    let den = product([l_at(u, 3, 0, reflect), l_at(&u.pow(2), 6, -2, reflect), l_at(&u.pow(3), 9, -3, reflect)])?;
    adjoint_l(mu, u, 3, -1, reflect)?.div(&den)
}

fn intertwining_factored(u: &LaurentPoly) -> Result<Factored, ZetaError> {
    let positive = RootDatum::g2().positive();
    let mut acc = Factored::one();
    for gamma in U_ALPHA {
        let bad = || ZetaError::InvalidSpec(format!("no coroot data for {gamma:?}"));
        let (k1, k2) = coroot_exponents(gamma).ok_or_else(bad)?;
        let n = 2 * k1 + k2;
        let mut two_rho = 0;
        for &d in &positive {
            two_rho += pairing(d, gamma).ok_or_else(bad)?;
        }
        let z = u.pow(n) * var("q").pow(two_rho / 2);
        acc = acc.mul(&Factored::l(&z, 3 * n, 0)?.div(&Factored::l(&z, 3 * n, 1)?)?)?;
    }
    Ok(acc)
}

/// c(s) with M_w̃ f°_s = c(s)·f°_{1−s}: the product over γ ∈ U^α of
/// (1 − q⁻¹z_γ)/(1 − z_γ), z_γ = χ(det γ∨(ϖ))·|det γ∨(ϖ)|^{3s}·q^{⟨ρ,γ∨⟩}.
pub fn intertwining_constant(u: &LaurentPoly) -> Result<RatFunc, ZetaError> {
    intertwining_factored(u)?.to_ratfunc()
}

/// Both sides of the gamma factor formula for unramified data.
#[derive(Clone, Debug)]
pub struct GammaReport {
    /// c(s)·Z°(1−s, χ⁻¹)/Z°(s, χ).
    pub from_zeta: Factored,
    /// γ(3s−1, Ad×χ)/(γ(3s−2,χ)γ(6s−3,χ²)γ(9s−5,χ³)).
    pub from_definition: Factored,
    pub ratio: RatFunc,
    /// Π_{i,j} γ(s, χμ_iμ_j⁻¹) against L(1−s, χ⁻¹π̃×π)/L(s, χπ×π̃).
    pub rankin_selberg_agrees: bool,
}

pub fn gamma_assembly(mu: &[LaurentPoly; 3], u: &LaurentPoly) -> Result<GammaReport, ZetaError> {
    let vals = adjoint_values(mu, u);
    let nine = product(vals.iter().map(|v| tate(v, 1, 0)))?;
    let l_s = product(vals.iter().map(|v| Factored::l(v, 1, 0)))?;
    let l_dual = product(vals.iter().map(|v| Factored::l(&v.inv()?, -1, 1)))?;
    let rankin_selberg_agrees = nine == l_dual.div(&l_s)?;

    let gamma_ad = product(vals.iter().map(|v| tate(v, 3, -1)))?.div(&tate(u, 3, -1)?)?;
    let abelian = product([tate(u, 3, -2), tate(&u.pow(2), 6, -3), tate(&u.pow(3), 9, -5)])?;
    let from_definition = gamma_ad.div(&abelian)?;

    let from_zeta = intertwining_factored(u)?.mul(&unramified_zeta(mu, &u.inv()?, true)?)?.div(&unramified_zeta(mu, u, false)?)?;
    let ratio = from_zeta.div(&from_definition)?.to_ratfunc()?;
    Ok(GammaReport { from_zeta, from_definition, ratio, rankin_selberg_agrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat;
    use crate::zeta::l_unram;

    #[test]
    fn trivial_tate_gamma() {
        let g = tate_gamma(&LaurentPoly::one(), 1, 0).unwrap();
        // (1 − X)/(1 − q⁻¹X⁻¹)
        let x = var("X");
        let qx = LaurentPoly::term(rat(1, 1), Monomial::from_pairs(&[(Symbol::new("q"), -1), (Symbol::new("X"), -1)]).unwrap());
        let want = RatFunc::new(LaurentPoly::one() - x, LaurentPoly::one() - qx).unwrap();
        assert_eq!(g, want);
    }

    #[test]
    fn intertwining_constant_telescopes() {
        let u = var("u");
        let c = intertwining_constant(&u).unwrap();
        let num = &(&l_unram(&u, 3, -2).unwrap() * &l_unram(&u.pow(2), 6, -3).unwrap()) * &l_unram(&u.pow(3), 9, -5).unwrap();
        let den = &(&l_unram(&u, 3, 0).unwrap() * &l_unram(&u.pow(2), 6, -2).unwrap()) * &l_unram(&u.pow(3), 9, -3).unwrap();
        assert_eq!(c, num.checked_div(&den).unwrap());
    }

    #[test]
    fn symbolic_report() {
        let mu = [var("m1"), var("m2"), var("m3")];
        let r = gamma_assembly(&mu, &var("u")).unwrap();
        assert!(r.rankin_selberg_agrees);
        assert!(r.ratio.is_one(), "{}", r.ratio);
    }
}
