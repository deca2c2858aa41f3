//! Concrete representations and L-homomorphisms.

use crate::g2::Mat;
use crate::symalg::LaurentPoly;

use super::{antidiagonal, block_diag, d0, inverse, lower_transpose, Factor, LGroup, LGroupError, LHom, RepAction};

fn one() -> LaurentPoly {
    LaurentPoly::one()
}

fn scalar(n: usize, c: &LaurentPoly) -> Mat {
    Mat::identity(n).scale(c)
}

fn inv_scalar(c: &LaurentPoly) -> LaurentPoly {
    c.inv().expect("μ values are invertible")
}

/// Basis of 𝔰𝔩_n: E_ij for i ≠ j in row-major order, then E_kk − E_{k+1,k+1}.
fn sl_basis(n: usize) -> Vec<Mat> {
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(Mat::from_fn(n, |a, b| if (a, b) == (i, j) { one() } else { LaurentPoly::zero() }));
            }
        }
    }
    for k in 0..n - 1 {
        let mut h = Mat::zero(n);
        h.set(k, k, one());
        h.set(k + 1, k + 1, LaurentPoly::int(-1));
        out.push(h);
    }
    out
}

fn sl_coords(x: &Mat) -> Vec<LaurentPoly> {
    let n = x.dim();
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(x.get(i, j).clone());
            }
        }
    }
    let mut partial = LaurentPoly::zero();
    for k in 0..n - 1 {
        partial += x.get(k, k);
        out.push(partial.clone());
    }
    out
}

fn mat_basis(n: usize) -> Vec<Mat> {
    (0..n * n).map(|k| Mat::from_fn(n, |a, b| if a * n + b == k { one() } else { LaurentPoly::zero() })).collect()
}

fn mat_coords(x: &Mat) -> Vec<LaurentPoly> {
    x.entries().map(|(_, _, v)| v.clone()).collect()
}

/// Matrix of a linear map in a basis, columns given by coordinates of images.
fn matrix_of(basis: &[Mat], coords: fn(&Mat) -> Vec<LaurentPoly>, f: impl Fn(&Mat) -> Mat) -> Mat {
    let cols: Vec<Vec<LaurentPoly>> = basis.iter().map(|b| coords(&f(b))).collect();
    Mat::from_fn(basis.len(), |i, j| cols[j][i].clone())
}

pub fn standard(n: usize) -> RepAction {
    RepAction::new(&format!("std{n}"), LGroup::single(Factor::Gl(n)), n, |g| Ok(g[0].clone()), Mat::identity(n))
}

pub fn trivial(group: &LGroup) -> RepAction {
    RepAction::new("1", group.clone(), 1, |_| Ok(Mat::identity(1)), Mat::identity(1))
}

/// χ_{E/F}: trivial on W_E, −1 on the inert Frobenius.
pub fn quadratic_character(group: &LGroup) -> RepAction {
    RepAction::new("χ", group.clone(), 1, |_| Ok(Mat::identity(1)), Mat::identity(1).scale(&LaurentPoly::int(-1)))
}

/// Differential of the unitary involution on 𝔰𝔩_n.
fn unitary_differential(n: usize, x: &Mat) -> Mat {
    let t = -&lower_transpose(x);
    if n % 2 == 1 {
        t
    } else {
        &(&d0(n) * &t) * &d0(n)
    }
}

fn adjoint_action(g: &[Mat]) -> Result<Mat, LGroupError> {
    let n = g[0].dim();
    let gi = inverse(&g[0])?;
    Ok(matrix_of(&sl_basis(n), sl_coords, |x| &(&g[0] * x) * &gi))
}

/// Ad on 𝔰𝔩_n for GL_n or U_n; the inert Frobenius acts by the differential of
/// the unitary involution (X ↦ −ₜX for n odd).
pub fn adjoint(f: Factor) -> RepAction {
    let (n, inert) = match f {
        Factor::Gl(n) => (n, Mat::identity(n * n - 1)),
        Factor::U(n) => (n, matrix_of(&sl_basis(n), sl_coords, |x| unitary_differential(n, x))),
        Factor::ResGl(_) => panic!("adjoint is defined here for GL_n and U_n"),
    };
    RepAction::new("Ad", LGroup::single(f), n * n - 1, adjoint_action, inert)
}

/// Ad′ = Ad ⊗ χ_{E/F} on U_n: the inert Frobenius acts by X ↦ ₜX for n odd.
pub fn adjoint_twisted(n: usize) -> RepAction {
    let inert = matrix_of(&sl_basis(n), sl_coords, |x| -&unitary_differential(n, x));
    RepAction::new("Ad′", LGroup::single(Factor::U(n)), n * n - 1, adjoint_action, inert)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

/// Asai± of Res GL_n on n×n matrices: (g1, g2)·X = g1·X·ₜg2, w·X = ±ₜX.
pub fn asai(n: usize, sign: Sign) -> RepAction {
    let s = LaurentPoly::int(sign.value());
    let inert = matrix_of(&mat_basis(n), mat_coords, |x| lower_transpose(x).scale(&s));
    let name = if sign == Sign::Plus { "Asai⁺" } else { "Asai⁻" };
    let act = move |g: &[Mat]| Ok(matrix_of(&mat_basis(n), mat_coords, |x| &(&g[0] * x) * &lower_transpose(&g[1])));
    RepAction::new(name, LGroup::single(Factor::ResGl(n)), n * n, act, inert)
}

/// Values of the character μ of W_E on Frobenius classes: μ(w) for a split
/// Frobenius w, and μ(w·w0⁻¹) for an inert one. μ(w²) = −1 for inert w since
/// μ restricts to χ_{E/F}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mu {
    pub split: LaurentPoly,
    pub inert: LaurentPoly,
}

impl Mu {
    pub fn trivial() -> Mu {
        Mu { split: one(), inert: one() }
    }
}

/// The (u, v)-part of Ad∘ξ^{(2,1)} on pairs (u ∈ C², v ∈ (C²)*), written
/// directly: (g, t)·(u, v) = (g·u·t⁻¹, t·v·g⁻¹); w ∈ W_E scales u by μ and v by
/// μ⁻¹; w0 sends (u, v) to ((−v2, v1), (−u2, u1)). `twisted` multiplies the
/// inert Frobenius by χ_{E/F}, as in Ad′∘ξ^{(2,1)}.
pub fn rog21_uv(mu: &Mu, twisted: bool) -> RepAction {
    let group = LGroup(vec![Factor::U(2), Factor::U(1)]);
    let act = |g: &[Mat]| {
        let t = g[1].get(0, 0).clone();
        let ti = t.inv().map_err(|_| LGroupError::NotInvertible)?;
        let u = g[0].scale(&ti);
        let v = inverse(&g[0])?.transpose().scale(&t);
        Ok(block_diag(&[u, v]))
    };
    let (m, mi) = (mu.split.clone(), inv_scalar(&mu.split));
    let split = Mat::diag(&[m.clone(), m, mi.clone(), mi]);
    let (p, pi) = (mu.inert.clone(), inv_scalar(&mu.inert));
    let s = if twisted { LaurentPoly::int(-1) } else { one() };
    let mut inert = Mat::zero(4);
    inert.set(0, 3, -&p);
    inert.set(1, 2, p);
    inert.set(2, 1, -&pi);
    inert.set(3, 0, pi);
    let inert = inert.scale(&s);
    let name = if twisted { "(u,v)′" } else { "(u,v)" };
    RepAction::new(name, group, 4, act, inert.clone()).with_frobenius(split, inert, inert_uv())
}

/// The inert Frobenius squared maps to diag(−1, 1, −1), i.e. g = −I, t = 1.
fn inert_uv() -> Mat {
    Mat::identity(4).scale(&LaurentPoly::int(-1))
}

fn res(n: usize) -> LGroup {
    LGroup::single(Factor::ResGl(n))
}

fn pair(a: Mat, b: Mat) -> Vec<Mat> {
    vec![a, b]
}

/// bc: GL_n → Res GL_n, g ↦ (g, g).
pub fn base_change(n: usize) -> LHom {
    let id = pair(Mat::identity(n), Mat::identity(n));
    LHom::new("bc", LGroup::single(Factor::Gl(n)), res(n), |g| Ok(vec![g[0].clone(), g[0].clone()]), [id.clone(), id.clone()], id)
}

/// AI: Res GL_n → GL_2n, (g1, g2) ↦ diag(g1, g2), inert w ↦ [[0, I], [I, 0]].
pub fn automorphic_induction(n: usize) -> LHom {
    let swap = Mat::from_fn(2 * n, |i, j| if i == (j + n) % (2 * n) { one() } else { LaurentPoly::zero() });
    LHom::new(
        "AI",
        res(n),
        LGroup::single(Factor::Gl(2 * n)),
        |g| Ok(vec![block_diag(g)]),
        [vec![Mat::identity(2 * n)], vec![swap]],
        vec![Mat::identity(2 * n)],
    )
}

/// sbc: U_n → Res GL_n, g ↦ (g, ₜg⁻¹). For n even the inert Frobenius picks
/// up (d0, d0) so that the map intertwines the two involutions.
pub fn stable_base_change(n: usize) -> LHom {
    let id = pair(Mat::identity(n), Mat::identity(n));
    let inert = if n % 2 == 1 { id.clone() } else { pair(d0(n), d0(n)) };
    LHom::new(
        "sbc",
        LGroup::single(Factor::U(n)),
        res(n),
        |g| Ok(vec![g[0].clone(), lower_transpose(&inverse(&g[0])?)]),
        [id.clone(), inert],
        id,
    )
}

/// Twist of Res GL_n by μ: W_E acts through (μ, μ^c) with μ^c = μ⁻¹ on split
/// Frobenius classes; the inert Frobenius carries (μ', −μ'⁻¹) so that its
/// square lands on μ(w²) = −1.
pub fn mu_twist(n: usize, mu: &Mu) -> LHom {
    let (m, p) = (&mu.split, &mu.inert);
    let split = pair(scalar(n, m), scalar(n, &inv_scalar(m)));
    let inert = pair(scalar(n, p), scalar(n, &-inv_scalar(p)));
    let minus = scalar(n, &LaurentPoly::int(-1));
    LHom::new("μ⊗", res(n), res(n), |g| Ok(g.to_vec()), [split, inert], pair(minus.clone(), minus))
}

/// ξ^{(2,1)}: U2×U1 → U3, (g, t) ↦ [[a,0,b],[0,t,0],[c,0,d]]; w ∈ W_E ↦
/// diag(μ,1,μ)·w, w0 ↦ diag(1,1,−1)·w0.
pub fn xi21(mu: &Mu) -> LHom {
    let embed = |g: &[Mat]| {
        let (a, t) = (&g[0], &g[1]);
        let z = LaurentPoly::zero;
        Ok(vec![Mat::from_rows(vec![
            vec![a.get(0, 0).clone(), z(), a.get(0, 1).clone()],
            vec![z(), t.get(0, 0).clone(), z()],
            vec![a.get(1, 0).clone(), z(), a.get(1, 1).clone()],
        ])])
    };
    let split = Mat::diag(&[mu.split.clone(), one(), mu.split.clone()]);
    let inert = Mat::diag(&[mu.inert.clone(), one(), -&mu.inert]);
    let square = Mat::diag(&[LaurentPoly::int(-1), one(), LaurentPoly::int(-1)]);
    LHom::new(
        "ξ21",
        LGroup(vec![Factor::U(2), Factor::U(1)]),
        LGroup::single(Factor::U(3)),
        embed,
        [vec![split], vec![inert]],
        vec![square],
    )
}

fn xi11_frobenius(mu: &Mu) -> [Mat; 3] {
    let k = Mat::units(2, &[(1, 2, -1), (2, 1, 1)]);
    [scalar(2, &inv_scalar(&mu.split)), k.scale(&inv_scalar(&mu.inert)), scalar(2, &LaurentPoly::int(-1))]
}

/// ξ^{(1,1)}: U1×U1 → U2, (a, b) ↦ diag(a, b); w ∈ W_E ↦ μ⁻¹(w)·w,
/// w0 ↦ [[0,−1],[1,0]]·w0.
pub fn xi11(mu: &Mu) -> LHom {
    let [s, i, sq] = xi11_frobenius(mu);
    LHom::new(
        "ξ11",
        LGroup(vec![Factor::U(1), Factor::U(1)]),
        LGroup::single(Factor::U(2)),
        |g| Ok(vec![Mat::diag(&[g[0].get(0, 0).clone(), g[1].get(0, 0).clone()])]),
        [vec![s], vec![i]],
        vec![sq],
    )
}

fn u1_cubed() -> LGroup {
    LGroup(vec![Factor::U(1); 3])
}

/// ξ^{(1,1)} × id: U1³ → U2×U1, (a, b, c) ↦ (diag(a, c), b).
pub fn xi11_times_id(mu: &Mu) -> LHom {
    let [s, i, sq] = xi11_frobenius(mu);
    let e = Mat::identity(1);
    LHom::new(
        "ξ11×id",
        u1_cubed(),
        LGroup(vec![Factor::U(2), Factor::U(1)]),
        |g| Ok(vec![Mat::diag(&[g[0].get(0, 0).clone(), g[2].get(0, 0).clone()]), g[1].clone()]),
        [vec![s, e.clone()], vec![i, e.clone()]],
        vec![sq, e],
    )
}

/// ξ^{(1,1,1)}: U1³ → U3, diagonal embedding; w ↦ m(w)·w with m = I on W_E
/// and J off it.
pub fn xi111() -> LHom {
    LHom::new(
        "ξ111",
        u1_cubed(),
        LGroup::single(Factor::U(3)),
        |g| Ok(vec![Mat::diag(&[g[0].get(0, 0).clone(), g[1].get(0, 0).clone(), g[2].get(0, 0).clone()])]),
        [vec![Mat::identity(3)], vec![antidiagonal(3)]],
        vec![Mat::identity(3)],
    )
}

/// Projection of a product onto one factor.
pub fn projection(group: &LGroup, factor: usize) -> LHom {
    let f = group.0[factor];
    let start = group.block_offsets()[factor];
    let len = LGroup::single(f).block_dims().len();
    let target = LGroup::single(f);
    let id = target.identity();
    LHom::new("pr", group.clone(), target, move |g| Ok(g[start..start + len].to_vec()), [id.clone(), id.clone()], id)
}

/// U2×U1 → U2, (g, c) ↦ c⁻¹·g: the parameter of π1 ⊗ η⁻¹.
pub fn eta_untwist() -> LHom {
    let id = vec![Mat::identity(2)];
    LHom::new(
        "⊗η⁻¹",
        LGroup(vec![Factor::U(2), Factor::U(1)]),
        LGroup::single(Factor::U(2)),
        |g| {
            let c = g[1].get(0, 0).inv().map_err(|_| LGroupError::NotInvertible)?;
            Ok(vec![g[0].scale(&c)])
        },
        [id.clone(), id.clone()],
        id,
    )
}

/// U1³ → U1, (a1, a2, a3) ↦ a_i/a_j.
pub fn character_ratio(i: usize, j: usize) -> LHom {
    let id = vec![Mat::identity(1)];
    LHom::new(
        &format!("η{}/η{}", i + 1, j + 1),
        u1_cubed(),
        LGroup::single(Factor::U(1)),
        move |g| {
            let d = g[j].get(0, 0).inv().map_err(|_| LGroupError::NotInvertible)?;
            Ok(vec![Mat::diag(&[g[i].get(0, 0) * &d])])
        },
        [id.clone(), id.clone()],
        id,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lgroup::{local_lfactor, Place, SatakeParam};
    use crate::symalg::RatFunc;

    #[test]
    fn sl_coordinates_invert_basis() {
        for n in 2..=4 {
            let b = sl_basis(n);
            for (k, x) in b.iter().enumerate() {
                let c = sl_coords(x);
                assert!(c.iter().enumerate().all(|(i, v)| v.is_one() == (i == k) && (v.is_zero() || i == k)));
            }
        }
    }

    #[test]
    fn one_dimensional_examples() {
        let x = LaurentPoly::var("X");
        let g1 = LGroup::single(Factor::Gl(1));
        let sp = SatakeParam::torus(g1, Place::Split, vec![vec![one()]]).unwrap();
        assert_eq!(local_lfactor(&sp, &standard(1)).unwrap(), RatFunc::new(one(), one() - &x).unwrap());

        let (a, b) = (LaurentPoly::var("a"), LaurentPoly::var("b"));
        let sp = SatakeParam::torus(res(1), Place::Split, vec![vec![a.clone()], vec![b.clone()]]).unwrap();
        let want = RatFunc::new(one(), one() - &(&a * &b) * &x).unwrap();
        assert_eq!(local_lfactor(&sp, &asai(1, Sign::Plus)).unwrap(), want);
    }

    #[test]
    fn uv_factor_at_inert_place() {
        let t = LaurentPoly::var("t");
        let x = LaurentPoly::var("X");
        let group = LGroup(vec![Factor::U(2), Factor::U(1)]);
        let sp = SatakeParam::torus(group, Place::Inert, vec![vec![t.clone(), t.pow(-1)], vec![one()]]).unwrap();
        let mu = Mu { split: one(), inert: LaurentPoly::var("m") };
        let x2 = x.pow(2);
        let want = RatFunc::new(one(), (one() + t.pow(2) * &x2) * (one() + t.pow(-2) * &x2)).unwrap();
        assert_eq!(local_lfactor(&sp, &rog21_uv(&mu, false)).unwrap(), want);
    }
}
