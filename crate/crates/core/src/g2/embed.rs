//! The stabilizer H_ρ of v_ρ = ᵀ(0,0,1,0,0,ρ,0,0) and its identification with
//! SL3 (ρ = τ² a square) through the embedding i: 𝔰𝔩3 → 𝔤2.

use crate::symalg::{rat, var, LaurentPoly};

use super::mat::Mat;
use super::{h_ab, h_root, root_subgroup, root_vector, G2Elem, G2Error, LieElem, Root, ALPHA, BETA};

/// Positions of the standard representation inside the 8 coordinates; the dual
/// sits at (7, 6, 1) and coordinates 4, 5 are fixed.
const STD: [usize; 3] = [1, 2, 7];
const DUAL: [usize; 3] = [6, 5, 0];

/// i(X): X on coordinates (2,3,8), −ᵀX on (7,6,1).
pub fn embed_sl3(x: &Mat) -> Result<LieElem, G2Error> {
    if x.dim() != 3 {
        return Err(G2Error::NotSl3);
    }
    if !x.trace().is_zero() {
        return Err(G2Error::NonzeroTrace);
    }
    let mut m = Mat::zero(8);
    for r in 0..3 {
        for c in 0..3 {
            m.set(STD[r], STD[c], x.get(r, c).clone());
            m.set(DUAL[r], DUAL[c], -x.get(c, r));
        }
    }
    Ok(LieElem(m))
}

/// The group version of i: g on the standard block, ᵀg⁻¹ on the dual block.
pub fn embed_sl3_group(g: &Mat) -> Result<G2Elem, G2Error> {
    if g.dim() != 3 || !g.det().is_one() {
        return Err(G2Error::NotSl3);
    }
    let inv_t = g.adjugate().transpose();
    let mut m = Mat::identity(8);
    for r in 0..3 {
        for c in 0..3 {
            m.set(STD[r], STD[c], g.get(r, c).clone());
            m.set(DUAL[r], DUAL[c], inv_t.get(r, c).clone());
        }
    }
    Ok(G2Elem(m))
}

/// Reads X back from i(X), checking that the matrix is in the image.
fn pull_back(m: &Mat) -> Option<Mat> {
    let x = Mat::from_fn(3, |r, c| m.get(STD[r], STD[c]).clone());
    (embed_sl3(&x).ok()?.0 == *m).then_some(x)
}

pub fn v_rho(rho: &LaurentPoly) -> Vec<LaurentPoly> {
    let mut v = vec![LaurentPoly::zero(); 8];
    v[2] = LaurentPoly::one();
    v[5] = rho.clone();
    v
}

/// h_β(1/(2τ))·x_α(1/(2τ))·x_{−α}(−τ), which carries v_ρ to ᵀ(0,0,0,−τ,−τ,0,0,0) when ρ = τ².
pub fn conjugator(tau: &LaurentPoly) -> Result<G2Elem, G2Error> {
    let half_inv = tau.inv()?.scale(&rat(1, 2));
    Ok(h_root(BETA, &half_inv)?.mul(&root_subgroup(ALPHA, &half_inv)?).mul(&root_subgroup(-ALPHA, &-tau)?))
}

/// Parameters of a general element of 𝔥_ρ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRhoParams {
    pub t1: LaurentPoly,
    pub a: LaurentPoly,
    pub d: LaurentPoly,
    pub e: LaurentPoly,
    pub f: LaurentPoly,
    pub h: LaurentPoly,
    pub l: LaurentPoly,
    pub k: LaurentPoly,
}

impl HRhoParams {
    pub fn symbolic() -> HRhoParams {
        HRhoParams {
            t1: var("T1"),
            a: var("a"),
            d: var("d"),
            e: var("e"),
            f: var("f"),
            h: var("h"),
            l: var("l"),
            k: var("k"),
        }
    }

    pub fn zero() -> HRhoParams {
        let z = LaurentPoly::zero;
        HRhoParams { t1: z(), a: z(), d: z(), e: z(), f: z(), h: z(), l: z(), k: z() }
    }
}

/// The general element of the stabilizer 𝔥_ρ of v_ρ.
pub fn h_rho_general(p: &HRhoParams, rho: &LaurentPoly) -> Mat {
    let z = LaurentPoly::zero;
    let r = |x: &LaurentPoly| rho * x;
    let n = |x: LaurentPoly| -x;
    let HRhoParams { t1, a, d, e, f, h, l, k } = p;
    let row4 = vec![n(r(l)), n(h.clone()), r(a), z(), z(), n(a.clone()), n(r(e)), n(d.clone())];
    Mat::from_rows(vec![
        vec![t1.clone(), a.clone(), n(r(e)), d.clone(), d.clone(), e.clone(), f.clone(), z()],
        vec![r(a), t1.clone(), n(r(d)), r(e), r(e), d.clone(), z(), n(f.clone())],
        vec![h.clone(), l.clone(), z(), a.clone(), a.clone(), z(), n(d.clone()), n(e.clone())],
        row4.clone(),
        row4,
        vec![n(r(h)), n(r(l)), z(), n(r(a)), n(r(a)), z(), r(d), r(e)],
        vec![k.clone(), z(), r(l), h.clone(), h.clone(), n(l.clone()), n(t1.clone()), n(a.clone())],
        vec![z(), n(k.clone()), r(h), r(l), r(l), n(h.clone()), n(r(a)), n(t1.clone())],
    ])
}

/// Conjugates the general element of 𝔥_{τ²} by [`conjugator`] and pulls the
/// result back along i to a 3×3 matrix.
pub fn stabilizer_conjugation(p: &HRhoParams, tau: &LaurentPoly) -> Result<Mat, G2Error> {
    let rho = tau * tau;
    let c = conjugator(tau)?;
    let m = c.conj(&h_rho_general(p, &rho));
    pull_back(&m).ok_or(G2Error::NotSl3)
}

/// ι(g) = C⁻¹·i(D·g·D)·C with D = diag(1, 1, −1), the embedding SL3 → H_{τ²}.
pub fn sl3_into_g2(g: &Mat, tau: &LaurentPoly) -> Result<G2Elem, G2Error> {
    let d = Mat::diag(&[LaurentPoly::one(), LaurentPoly::one(), LaurentPoly::int(-1)]);
    let c = conjugator(tau)?;
    Ok(c.inverse().mul(&embed_sl3_group(&(&(&d * g) * &d))?).mul(&c))
}

/// The displayed element of N_{2,ρ}: [[1, rτ, tτ + r²ρ/2], [0, 1, rτ], [0, 0, 1]] at ρ = τ².
pub fn n2_rho(r: &LaurentPoly, t: &LaurentPoly, tau: &LaurentPoly) -> Mat {
    let rho = tau * tau;
    let corner = t * tau + (r * r * rho).scale(&rat(1, 2));
    u_matrix(&(r * tau), &corner, &(r * tau))
}

/// The displayed element of U_ρ: [[1, x + yτ, (x² − y²ρ)/2 + wτ], [0, 1, −x + yτ], [0, 0, 1]].
pub fn u_rho(x: &LaurentPoly, y: &LaurentPoly, w: &LaurentPoly, tau: &LaurentPoly) -> Mat {
    let rho = tau * tau;
    let corner = (x * x - y * y * rho).scale(&rat(1, 2)) + w * tau;
    u_matrix(&(x + y * tau), &corner, &(-x + y * tau))
}

fn u_matrix(u12: &LaurentPoly, u13: &LaurentPoly, u23: &LaurentPoly) -> Mat {
    let (o, z) = (LaurentPoly::one, LaurentPoly::zero);
    Mat::from_rows(vec![vec![o(), u12.clone(), u13.clone()], vec![z(), o(), u23.clone()], vec![z(), z(), o()]])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviModulus {
    /// δ(h(a, b)) for each root δ of U^α.
    pub weights: Vec<(Root, LaurentPoly)>,
    pub det_ad: LaurentPoly,
    /// det(m)³ with h(a, b) ↦ diag(ab, a).
    pub det_m_cubed: LaurentPoly,
}

/// det Ad(h(a, b)) on the unipotent radical of P, against det(m)³.
pub fn levi_modulus() -> Result<LeviModulus, G2Error> {
    let (a, b) = (var("a"), var("b"));
    let h = h_ab(&a, &b)?;
    let mut weights = Vec::new();
    let mut det_ad = LaurentPoly::one();
    for r in [BETA, Root::new(1, 1), Root::new(2, 1), Root::new(3, 1), Root::new(3, 2)] {
        let x = root_vector(r).ok_or(G2Error::NotARoot(r))?;
        let y = h.conj(&x);
        let (i, j, c) = x.entries().find(|(_, _, c)| !c.is_zero()).expect("nonzero root vector");
        let w = y.get(i, j).scale(&(rat(1, 1) / c.as_constant().expect("integral")));
        debug_assert_eq!(y, x.scale(&w));
        det_ad = &det_ad * &w;
        weights.push((r, w));
    }
    let det_m = &a * &b * &a;
    Ok(LeviModulus { weights, det_ad, det_m_cubed: det_m.pow(3) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::g2::apply;

    #[test]
    fn embedding_rejects_trace() {
        assert_eq!(embed_sl3(&Mat::units(3, &[(1, 1, 1)])), Err(G2Error::NonzeroTrace));
        assert!(embed_sl3(&Mat::zero(3)).unwrap().0.is_zero());
        assert!(embed_sl3_group(&Mat::diag(&[LaurentPoly::int(2), LaurentPoly::one(), LaurentPoly::one()])).is_err());
    }

    #[test]
    fn conjugator_moves_v_rho() {
        let tau = var("tau");
        let c = conjugator(&tau).unwrap();
        let mut want = vec![LaurentPoly::zero(); 8];
        want[3] = -&tau;
        want[4] = -&tau;
        assert_eq!(apply(&c.0, &v_rho(&(&tau * &tau))), want);
    }

    #[test]
    fn zero_parameters_conjugate_to_zero() {
        assert!(stabilizer_conjugation(&HRhoParams::zero(), &var("tau")).unwrap().is_zero());
    }
}
