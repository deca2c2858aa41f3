//! Weil-form L-groups of GL_n, U_n and Res_{E/F} GL_n at unramified places.
//!
//! An element of ^LG is stored as its identity-component part (one matrix per
//! block) together with a Frobenius class: `Split` for a Frobenius in W_E and
//! `Inert` for one outside it. Representations and L-homomorphisms carry
//! explicit matrices for both classes, so every identity reduces to matrix
//! algebra over the Laurent ring and L-factors are det(I − X·r(t)·r(w))⁻¹.

mod catalog;
mod suite;

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::g2::Mat;
use crate::symalg::{rat, LaurentPoly, RatFunc, SymError, Q};

pub use catalog::*;
pub use suite::{functoriality_checks, identity_checks, Identity};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum LGroupError {
    #[error("group mismatch: expected {expected}, found {found}")]
    TagMismatch { expected: String, found: String },
    #[error("wrong block shape for {0}")]
    Shape(String),
    #[error("matrix is not invertible over the Laurent ring")]
    NotInvertible,
    #[error("torus element is not fixed by the inert Frobenius")]
    NotGaloisFixed,
    #[error(transparent)]
    Sym(#[from] SymError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Place {
    Split,
    Inert,
}

impl Place {
    pub const ALL: [Place; 2] = [Place::Split, Place::Inert];

    fn idx(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Place::Split => "split",
            Place::Inert => "inert",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Gl(usize),
    U(usize),
    ResGl(usize),
}

impl Factor {
    fn block_dims(self) -> Vec<usize> {
        match self {
            Factor::Gl(n) | Factor::U(n) => vec![n],
            Factor::ResGl(n) => vec![n, n],
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Gl(n) => write!(f, "GL{n}"),
            Factor::U(n) => write!(f, "U{n}"),
            Factor::ResGl(n) => write!(f, "ResGL{n}"),
        }
    }
}

/// A product of factors; its identity component is a list of square blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LGroup(pub Vec<Factor>);

impl fmt::Display for LGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("×"))
    }
}

impl LGroup {
    pub fn single(f: Factor) -> LGroup {
        LGroup(vec![f])
    }

    pub fn block_dims(&self) -> Vec<usize> {
        self.0.iter().flat_map(|f| f.block_dims()).collect()
    }

    /// First block index of each factor.
    pub fn block_offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut k = 0;
        for f in &self.0 {
            out.push(k);
            k += f.block_dims().len();
        }
        out
    }

    fn check_shape(&self, g: &[Mat]) -> Result<(), LGroupError> {
        let dims = self.block_dims();
        if dims.len() != g.len() || dims.iter().zip(g).any(|(d, m)| *d != m.dim()) {
            return Err(LGroupError::Shape(self.to_string()));
        }
        Ok(())
    }

    fn expect(&self, other: &LGroup) -> Result<(), LGroupError> {
        if self != other {
            return Err(LGroupError::TagMismatch { expected: self.to_string(), found: other.to_string() });
        }
        Ok(())
    }

    /// Action of a Frobenius outside W_E on the identity component: trivial on
    /// GL_n, g ↦ ₜg⁻¹ on U_n for n odd and d0·ₜg⁻¹·d0 for n even, and the swap
    /// on Res GL_n.
    pub fn sigma(&self, g: &[Mat]) -> Result<Vec<Mat>, LGroupError> {
        self.check_shape(g)?;
        let mut out = Vec::with_capacity(g.len());
        let mut k = 0;
        for f in &self.0 {
            match f {
                Factor::Gl(_) => out.push(g[k].clone()),
                Factor::U(n) => out.push(unitary_involution(*n, &g[k])?),
                Factor::ResGl(_) => {
                    out.push(g[k + 1].clone());
                    out.push(g[k].clone());
                }
            }
            k += f.block_dims().len();
        }
        Ok(out)
    }

    pub fn identity(&self) -> Vec<Mat> {
        self.block_dims().into_iter().map(Mat::identity).collect()
    }
}

/// ₜg = J·ᵀg·J, the transpose about the antidiagonal.
pub fn lower_transpose(m: &Mat) -> Mat {
    let n = m.dim();
    Mat::from_fn(n, |i, j| m.get(n - 1 - j, n - 1 - i).clone())
}

pub fn inverse(m: &Mat) -> Result<Mat, LGroupError> {
    let d = m.det().inv().map_err(|_| LGroupError::NotInvertible)?;
    Ok(m.adjugate().scale(&d))
}

/// diag(1, −1, 1, …).
pub fn d0(n: usize) -> Mat {
    Mat::diag(&(0..n).map(|i| LaurentPoly::int(if i % 2 == 0 { 1 } else { -1 })).collect::<Vec<_>>())
}

/// The antidiagonal matrix of ones.
pub fn antidiagonal(n: usize) -> Mat {
    Mat::from_fn(n, |i, j| if i + j + 1 == n { LaurentPoly::one() } else { LaurentPoly::zero() })
}

fn unitary_involution(n: usize, g: &Mat) -> Result<Mat, LGroupError> {
    let t = lower_transpose(&inverse(g)?);
    Ok(if n % 2 == 1 { t } else { &(&d0(n) * &t) * &d0(n) })
}

fn blockwise(a: &[Mat], b: &[Mat]) -> Vec<Mat> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

/// Block-diagonal matrix.
pub fn block_diag(parts: &[Mat]) -> Mat {
    let n: usize = parts.iter().map(Mat::dim).sum();
    let mut m = Mat::zero(n);
    let mut k = 0;
    for p in parts {
        for (i, j, v) in p.entries() {
            m.set(k + i, k + j, v.clone());
        }
        k += p.dim();
    }
    m
}

/// Unramified L-parameter data: an element of the identity component and a
/// Frobenius class. Built from a torus element it is a Satake parameter;
/// images under L-homomorphisms need not be diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeParam {
    pub group: LGroup,
    pub place: Place,
    pub elem: Vec<Mat>,
}

impl SatakeParam {
    /// A torus element, one list of diagonal entries per block. At inert
    /// places it must be fixed by the Frobenius.
    pub fn torus(group: LGroup, place: Place, diags: Vec<Vec<LaurentPoly>>) -> Result<SatakeParam, LGroupError> {
        let elem: Vec<Mat> = diags.iter().map(|d| Mat::diag(d)).collect();
        group.check_shape(&elem)?;
        if diags.iter().flatten().any(|v| v.inv().is_err()) {
            return Err(LGroupError::NotInvertible);
        }
        if place == Place::Inert && group.sigma(&elem)? != elem {
            return Err(LGroupError::NotGaloisFixed);
        }
        Ok(SatakeParam { group, place, elem })
    }

    /// Random torus data with small rational entries. Inert unitary blocks take
    /// the form diag(t1, …, 1, …, t1⁻¹); inert Res GL_n blocks are (D, D).
    pub fn random(group: &LGroup, place: Place, rng: &mut impl Rng) -> SatakeParam {
        let mut diags = Vec::new();
        for f in &group.0 {
            match (f, place) {
                (Factor::U(n), Place::Inert) => {
                    let mut d = vec![LaurentPoly::one(); *n];
                    for i in 0..n / 2 {
                        let t = random_unit(rng);
                        d[n - 1 - i] = t.inv().expect("nonzero");
                        d[i] = t;
                    }
                    diags.push(d);
                }
                (Factor::ResGl(n), Place::Inert) => {
                    let d: Vec<LaurentPoly> = (0..*n).map(|_| random_unit(rng)).collect();
                    diags.push(d.clone());
                    diags.push(d);
                }
                _ => {
                    for dim in f.block_dims() {
                        diags.push((0..dim).map(|_| random_unit(rng)).collect());
                    }
                }
            }
        }
        SatakeParam::torus(group.clone(), place, diags).expect("random torus data is valid")
    }
}

/// A nonzero rational ±a/b with 1 ≤ a ≤ 7, 1 ≤ b ≤ 5.
pub fn random_unit(rng: &mut impl Rng) -> LaurentPoly {
    let a: i64 = rng.gen_range(1..=7);
    let b: i64 = rng.gen_range(1..=5);
    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
    LaurentPoly::constant(rat(s * a, b))
}

/// A random invertible matrix L·D·U with unit-triangular integer L, U.
pub fn random_invertible(n: usize, rng: &mut impl Rng) -> Mat {
    let mut l = Mat::identity(n);
    let mut u = Mat::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, LaurentPoly::int(rng.gen_range(-3..=3)));
            u.set(j, i, LaurentPoly::int(rng.gen_range(-3..=3)));
        }
    }
    let d = Mat::diag(&(0..n).map(|_| random_unit(rng)).collect::<Vec<_>>());
    &(&l * &d) * &u
}

pub fn random_element(group: &LGroup, rng: &mut impl Rng) -> Vec<Mat> {
    group.block_dims().into_iter().map(|n| random_invertible(n, rng)).collect()
}

type Action = Arc<dyn Fn(&[Mat]) -> Result<Mat, LGroupError> + Send + Sync>;
type BlockMap = Arc<dyn Fn(&[Mat]) -> Result<Vec<Mat>, LGroupError> + Send + Sync>;

/// A finite-dimensional representation of ^LG.
#[derive(Clone)]
pub struct RepAction {
    pub name: String,
    pub group: LGroup,
    pub dim: usize,
    act: Action,
    /// Image of the Frobenius representative, by class.
    frob: [Mat; 2],
    /// Image of the square of the inert Frobenius, which lies in W_E.
    inert_square: Mat,
}

impl fmt::Debug for RepAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RepAction({} of {}, dim {})", self.name, self.group, self.dim)
    }
}

impl RepAction {
    /// A representation on which W_E acts trivially and the inert Frobenius acts by `inert`.
    pub fn new(
        name: &str,
        group: LGroup,
        dim: usize,
        act: impl Fn(&[Mat]) -> Result<Mat, LGroupError> + Send + Sync + 'static,
        inert: Mat,
    ) -> RepAction {
        RepAction {
            name: name.to_string(),
            group,
            dim,
            act: Arc::new(act),
            frob: [Mat::identity(dim), inert],
            inert_square: Mat::identity(dim),
        }
    }

    /// Replaces the Frobenius images; `inert_square` is the image of w² ∈ W_E.
    pub fn with_frobenius(mut self, split: Mat, inert: Mat, inert_square: Mat) -> RepAction {
        self.frob = [split, inert];
        self.inert_square = inert_square;
        self
    }

    pub fn on_identity(&self, g: &[Mat]) -> Result<Mat, LGroupError> {
        self.group.check_shape(g)?;
        (self.act)(g)
    }

    pub fn frobenius(&self, place: Place) -> &Mat {
        &self.frob[place.idx()]
    }

    /// r(t)·r(w).
    pub fn operator(&self, sp: &SatakeParam) -> Result<Mat, LGroupError> {
        self.group.expect(&sp.group)?;
        Ok(&self.on_identity(&sp.elem)? * self.frobenius(sp.place))
    }

    /// The semidirect-product relations at a random identity-component element g:
    /// W_E commutes with r(g), r(w)r(g) = r(σg)r(w) and r(w)² = r(w²).
    pub fn is_consistent(&self, g: &[Mat]) -> Result<bool, LGroupError> {
        let rg = self.on_identity(g)?;
        let [fs, fi] = &self.frob;
        let rs = self.on_identity(&self.group.sigma(g)?)?;
        Ok(fs * &rg == &rg * fs && fi * &rg == &rs * fi && fi * fi == self.inert_square)
    }
}

/// An L-homomorphism ^LH → ^LG: (g, w) ↦ (h(g)·m(w), w).
#[derive(Clone)]
pub struct LHom {
    pub name: String,
    pub source: LGroup,
    pub target: LGroup,
    map: BlockMap,
    /// m(w) for a Frobenius of each class.
    frob: [Vec<Mat>; 2],
    /// m(w²) for the inert Frobenius w.
    inert_square: Vec<Mat>,
}

impl fmt::Debug for LHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LHom({}: {} → {})", self.name, self.source, self.target)
    }
}

impl LHom {
    pub fn new(
        name: &str,
        source: LGroup,
        target: LGroup,
        map: impl Fn(&[Mat]) -> Result<Vec<Mat>, LGroupError> + Send + Sync + 'static,
        frob: [Vec<Mat>; 2],
        inert_square: Vec<Mat>,
    ) -> LHom {
        LHom { name: name.to_string(), source, target, map: Arc::new(map), frob, inert_square }
    }

    pub fn on_identity(&self, g: &[Mat]) -> Result<Vec<Mat>, LGroupError> {
        self.source.check_shape(g)?;
        let out = (self.map)(g)?;
        self.target.check_shape(&out)?;
        Ok(out)
    }

    pub fn frobenius(&self, place: Place) -> &[Mat] {
        &self.frob[place.idx()]
    }

    /// Image of the L-parameter w ↦ (t, w).
    pub fn apply(&self, sp: &SatakeParam) -> Result<SatakeParam, LGroupError> {
        self.source.expect(&sp.group)?;
        let elem = blockwise(&self.on_identity(&sp.elem)?, self.frobenius(sp.place));
        Ok(SatakeParam { group: self.target.clone(), place: sp.place, elem })
    }

    /// Homomorphism relations at random g1, g2: h(g1g2) = h(g1)h(g2),
    /// m(w_E) centralizes the image, h(σg)·m(w) = m(w)·σ'(h(g)) and
    /// m(w)·σ'(m(w)) = m(w²).
    pub fn is_homomorphism(&self, g1: &[Mat], g2: &[Mat]) -> Result<bool, LGroupError> {
        let h1 = self.on_identity(g1)?;
        let h12 = self.on_identity(&blockwise(g1, g2))?;
        let mut ok = h12 == blockwise(&h1, &self.on_identity(g2)?);
        let [ms, mi] = &self.frob;
        ok &= blockwise(ms, &h1) == blockwise(&h1, ms);
        let lhs = blockwise(&self.on_identity(&self.source.sigma(g1)?)?, mi);
        ok &= lhs == blockwise(mi, &self.target.sigma(&h1)?);
        ok &= blockwise(mi, &self.target.sigma(mi)?) == self.inert_square;
        Ok(ok)
    }
}

/// outer ∘ inner.
pub fn compose(outer: &LHom, inner: &LHom) -> Result<LHom, LGroupError> {
    outer.source.expect(&inner.target)?;
    let (o, i) = (outer.clone(), inner.clone());
    let frob = [
        blockwise(&o.on_identity(inner.frobenius(Place::Split))?, outer.frobenius(Place::Split)),
        blockwise(&o.on_identity(inner.frobenius(Place::Inert))?, outer.frobenius(Place::Inert)),
    ];
    let inert_square = blockwise(&o.on_identity(&inner.inert_square)?, &outer.inert_square);
    Ok(LHom {
        name: format!("{}∘{}", outer.name, inner.name),
        source: inner.source.clone(),
        target: outer.target.clone(),
        map: Arc::new(move |g| o.on_identity(&i.on_identity(g)?)),
        frob,
        inert_square,
    })
}

/// r ∘ h.
pub fn pullback(r: &RepAction, h: &LHom) -> Result<RepAction, LGroupError> {
    r.group.expect(&h.target)?;
    let frob = [
        &r.on_identity(h.frobenius(Place::Split))? * r.frobenius(Place::Split),
        &r.on_identity(h.frobenius(Place::Inert))? * r.frobenius(Place::Inert),
    ];
    let inert_square = &r.on_identity(&h.inert_square)? * &r.inert_square;
    let (rr, hh) = (r.clone(), h.clone());
    Ok(RepAction {
        name: format!("{}∘{}", r.name, h.name),
        group: h.source.clone(),
        dim: r.dim,
        act: Arc::new(move |g| rr.on_identity(&hh.on_identity(g)?)),
        frob,
        inert_square,
    })
}

pub fn direct_sum(parts: &[RepAction]) -> Result<RepAction, LGroupError> {
    let first = parts.first().ok_or_else(|| LGroupError::Shape("empty direct sum".into()))?;
    for p in parts {
        first.group.expect(&p.group)?;
    }
    let block = |f: &dyn Fn(&RepAction) -> Mat| block_diag(&parts.iter().map(f).collect::<Vec<_>>());
    let frob = [block(&|p| p.frob[0].clone()), block(&|p| p.frob[1].clone())];
    let inert_square = block(&|p| p.inert_square.clone());
    let owned: Vec<RepAction> = parts.to_vec();
    Ok(RepAction {
        name: parts.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join("⊕"),
        group: first.group.clone(),
        dim: parts.iter().map(|p| p.dim).sum(),
        act: Arc::new(move |g| Ok(block_diag(&owned.iter().map(|p| p.on_identity(g)).collect::<Result<Vec<_>, _>>()?))),
        frob,
        inert_square,
    })
}

/// det(I − X·M) as a polynomial in X. Constant matrices go through the
/// Faddeev–LeVerrier recursion over Q; others through a symbolic determinant.
pub fn char_det(m: &Mat) -> LaurentPoly {
    let n = m.dim();
    let x = LaurentPoly::var("X");
    let consts: Option<Vec<Q>> = m.entries().map(|(_, _, v)| v.as_constant()).collect();
    let Some(a) = consts else {
        return (&Mat::identity(n) - &m.scale(&x)).det();
    };
    // c[k] is the coefficient of λ^k in det(λI − A).
    let mut c = vec![Q::from_integer(0.into()); n + 1];
    c[n] = Q::from_integer(1.into());
    let mut mk = vec![Q::from_integer(0.into()); n * n];
    for k in 1..=n {
        let mut next = vec![Q::from_integer(0.into()); n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Q::from_integer(0.into());
                for l in 0..n {
                    s += &a[i * n + l] * &mk[l * n + j];
                }
                if i == j {
                    s += &c[n - k + 1];
                }
                next[i * n + j] = s;
            }
        }
        let mut tr = Q::from_integer(0.into());
        for i in 0..n {
            for l in 0..n {
                tr += &a[i * n + l] * &next[l * n + i];
            }
        }
        c[n - k] = -tr / Q::from_integer((k as i64).into());
        mk = next;
    }
    // det(I − XA) = Σ c[k] X^{n−k}.
    let mut out = LaurentPoly::zero();
    for (k, ck) in c.iter().enumerate() {
        out += &(LaurentPoly::constant(ck.clone()) * x.pow((n - k) as i32));
    }
    out
}

/// det(I − X·r(t)·r(w))⁻¹.
pub fn local_lfactor(sp: &SatakeParam, r: &RepAction) -> Result<RatFunc, LGroupError> {
    Ok(RatFunc::new(LaurentPoly::one(), char_det(&r.operator(sp)?))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn char_det_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=5 {
            let m = random_invertible(n, &mut rng);
            let x = LaurentPoly::var("X");
            assert_eq!(char_det(&m), (&Mat::identity(n) - &m.scale(&x)).det());
        }
    }

    #[test]
    fn unitary_involution_is_an_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=4 {
            let g = LGroup::single(Factor::U(n));
            let x = random_element(&g, &mut rng);
            assert_eq!(g.sigma(&g.sigma(&x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn inert_torus_must_be_fixed() {
        let g = LGroup::single(Factor::U(2));
        let t = LaurentPoly::var("t");
        assert!(SatakeParam::torus(g.clone(), Place::Inert, vec![vec![t.clone(), t.pow(-1)]]).is_ok());
        assert_eq!(
            SatakeParam::torus(g.clone(), Place::Inert, vec![vec![t.clone(), t.clone()]]),
            Err(LGroupError::NotGaloisFixed)
        );
        assert!(SatakeParam::torus(g, Place::Split, vec![vec![t.clone(), t]]).is_ok());
    }
}
