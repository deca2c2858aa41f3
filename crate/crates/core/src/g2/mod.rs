//! Split G2 as 8×8 matrices preserving the antidiagonal form J and fixing
//! v0 = ᵀ(0,0,0,1,−1,0,0,0), with entries Laurent polynomials in symbolic
//! parameters.

mod embed;
mod mat;
mod roots;
mod suite;

pub use embed::{
    conjugator, embed_sl3, embed_sl3_group, h_rho_general, levi_modulus, n2_rho, sl3_into_g2, stabilizer_conjugation,
    u_rho, v_rho, HRhoParams, LeviModulus,
};
pub use mat::Mat;
pub use suite::{cm_display, structure_checks};
pub use roots::{coroot, lie_basis, lie_coordinates, root_vector, Root, RootDatum, ALPHA, BETA};

use crate::symalg::{LaurentPoly, SymError};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum G2Error {
    #[error("{0:?} is not a root of G2")]
    NotARoot(Root),
    #[error("matrix has nonzero trace")]
    NonzeroTrace,
    #[error("matrix is not in SL3")]
    NotSl3,
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// The form with ones on the antidiagonal.
pub fn form_j() -> Mat {
    Mat::from_fn(8, |i, j| if i + j == 7 { LaurentPoly::one() } else { LaurentPoly::zero() })
}

pub fn v0() -> Vec<LaurentPoly> {
    let mut v = vec![LaurentPoly::zero(); 8];
    v[3] = LaurentPoly::one();
    v[4] = LaurentPoly::int(-1);
    v
}

pub fn apply(m: &Mat, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
    (0..m.dim())
        .map(|i| {
            let mut s = LaurentPoly::zero();
            for (j, vj) in v.iter().enumerate() {
                s += &(m.get(i, j) * vj);
            }
            s
        })
        .collect()
}

/// An element of G2 in the 8-dimensional realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G2Elem(pub Mat);

/// An element of 𝔤2 ⊂ 𝔰𝔬(J).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElem(pub Mat);

impl G2Elem {
    pub fn identity() -> G2Elem {
        G2Elem(Mat::identity(8))
    }

    pub fn mul(&self, o: &G2Elem) -> G2Elem {
        G2Elem(&self.0 * &o.0)
    }

    /// g⁻¹ = J·ᵀg·J.
    pub fn inverse(&self) -> G2Elem {
        let j = form_j();
        G2Elem(&(&j * &self.0.transpose()) * &j)
    }

    pub fn conj(&self, x: &Mat) -> Mat {
        &(&self.0 * x) * &self.inverse().0
    }

    pub fn preserves_form(&self) -> bool {
        let j = form_j();
        &(&self.0.transpose() * &j) * &self.0 == j
    }

    pub fn fixes_v0(&self) -> bool {
        apply(&self.0, &v0()) == v0()
    }

    pub fn det(&self) -> LaurentPoly {
        self.0.det()
    }
}

impl LieElem {
    /// ᵀX·J + J·X = 0 and X·v0 = 0.
    pub fn is_valid(&self) -> bool {
        let j = form_j();
        (&(&self.0.transpose() * &j) + &(&j * &self.0)).is_zero() && apply(&self.0, &v0()).iter().all(|x| x.is_zero())
    }
}

/// x_δ(t) = exp(t·X_δ).
pub fn root_subgroup(d: Root, t: &LaurentPoly) -> Result<G2Elem, G2Error> {
    let x = root_vector(d).ok_or(G2Error::NotARoot(d))?;
    Ok(G2Elem(x.exp_nilpotent(t).expect("root vectors are nilpotent")))
}

/// w_δ(t) = x_δ(t)·x_{−δ}(−t⁻¹)·x_δ(t).
pub fn weyl(d: Root, t: &LaurentPoly) -> Result<G2Elem, G2Error> {
    let ti = t.inv()?;
    let x = root_subgroup(d, t)?;
    Ok(x.mul(&root_subgroup(-d, &-ti)?).mul(&x))
}

/// h_δ(t) = w_δ(t)·w_δ(1)⁻¹.
pub fn h_root(d: Root, t: &LaurentPoly) -> Result<G2Elem, G2Error> {
    Ok(weyl(d, t)?.mul(&weyl(d, &LaurentPoly::one())?.inverse()))
}

/// h(a, b) = h_α(ab)·h_β(a²b).
pub fn h_ab(a: &LaurentPoly, b: &LaurentPoly) -> Result<G2Elem, G2Error> {
    Ok(h_root(ALPHA, &(a * b))?.mul(&h_root(BETA, &(a * a * b))?))
}

/// ⟨δ, γ∨⟩, read from [H_γ, X_δ] = ⟨δ, γ∨⟩·X_δ.
pub fn pairing(delta: Root, gamma: Root) -> Option<i32> {
    let x = root_vector(delta)?;
    let y = coroot(gamma)?.bracket(&x);
    let (i, j, c) = x.entries().find(|(_, _, c)| !c.is_zero())?;
    let k = y.get(i, j).as_constant()? / c.as_constant()?;
    (k.is_integer() && y == x.scale(&LaurentPoly::constant(k.clone()))).then(|| k.to_integer().try_into().ok())?
}

/// (k1, k2) with h_γ(t) = h(t^{k1}, t^{k2}), read from the diagonal of H_γ.
pub fn coroot_exponents(gamma: Root) -> Option<(i32, i32)> {
    let h = coroot(gamma)?;
    let k = |i: usize| h.get(i, i).as_constant().and_then(|c| c.is_integer().then(|| c.to_integer().try_into().ok()).flatten());
    Some((k(1)?, k(2)?))
}

/// Factors a unipotent g as ∏ x_δ(c_δ) over `roots` taken in order of height,
/// or `None` if g is not in the subgroup they generate.
pub fn factor_unipotent(g: &G2Elem, roots: &[Root]) -> Option<Vec<(Root, LaurentPoly)>> {
    let mut order: Vec<Root> = roots.to_vec();
    order.sort_by_key(|r| (r.height(), *r));
    let all = RootDatum::g2().roots;
    let mut rest = g.clone();
    let mut out = Vec::new();
    for d in order {
        let coords = lie_coordinates(&rest.0.log_unipotent()?)?;
        let idx = all.iter().position(|&r| r == d)?;
        let c = coords[idx].clone();
        rest = root_subgroup(d, &-&c).ok()?.mul(&rest);
        out.push((d, c));
    }
    (rest == G2Elem::identity()).then_some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::var;

    #[test]
    fn pairings_match_cartan_matrix() {
        // α short, β long.
        assert_eq!(pairing(BETA, ALPHA), Some(-3));
        assert_eq!(pairing(ALPHA, BETA), Some(-1));
        for r in RootDatum::g2().roots {
            assert_eq!(pairing(r, r), Some(2), "{r:?}");
            let (k1, k2) = coroot_exponents(r).unwrap();
            assert_eq!(h_root(r, &var("t")).unwrap(), h_ab(&var("t").pow(k1), &var("t").pow(k2)).unwrap(), "{r:?}");
        }
    }

    #[test]
    fn torus_is_diagonal() {
        let (a, b) = (var("a"), var("b"));
        let h = h_ab(&a, &b).unwrap();
        let expect = [&a * &b, a.clone(), b.clone(), LaurentPoly::one(), LaurentPoly::one(), b.pow(-1), a.pow(-1), (&a * &b).pow(-1)];
        assert_eq!(h.0, Mat::diag(&expect));
    }

    #[test]
    fn one_parameter_subgroups() {
        let (t, s) = (var("t"), var("s"));
        for r in RootDatum::g2().roots {
            let x = root_subgroup(r, &t).unwrap();
            assert!(x.preserves_form() && x.fixes_v0(), "{r:?}");
            assert_eq!(x.mul(&root_subgroup(r, &s).unwrap()), root_subgroup(r, &(&t + &s)).unwrap());
        }
        assert_eq!(root_subgroup(ALPHA, &LaurentPoly::zero()).unwrap(), G2Elem::identity());
        assert!(matches!(root_subgroup(Root::new(2, 2), &t), Err(G2Error::NotARoot(_))));
    }

    #[test]
    fn inverse_via_form() {
        let g = weyl(ALPHA, &var("t")).unwrap().mul(&root_subgroup(Root::new(2, 1), &var("s")).unwrap());
        assert_eq!(g.mul(&g.inverse()), G2Elem::identity());
    }

    #[test]
    fn factorization_recovers_parameters() {
        let (t, s) = (var("t"), var("s"));
        let g = root_subgroup(Root::new(1, 1), &t).unwrap().mul(&root_subgroup(Root::new(3, 2), &s).unwrap());
        let f = factor_unipotent(&g, &[Root::new(3, 2), Root::new(1, 1)]).unwrap();
        assert_eq!(f, vec![(Root::new(1, 1), t.clone()), (Root::new(3, 2), s)]);
        assert!(factor_unipotent(&root_subgroup(ALPHA, &t).unwrap(), &[BETA]).is_none());
    }
}
