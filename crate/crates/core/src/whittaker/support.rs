//! Membership in B3·K_c and the torus part of the Iwasawa-type factorization.
//!
//! K_c = ε K'_c ε⁻¹ with ε = [[1,0,0],[0,0,1],[0,ϖ^c,0]] and K'_c the matrices in
//! GL3(o) whose last row is ≡ (0,0,1) mod p^c. Writing h = ε⁻¹gε and
//! B' = ε⁻¹B3ε = [[*,*,*],[0,*,0],[0,*,*]], we decide h ∈ B'K'_c: the second row
//! of h fixes the second row of k' up to a unit, and the third row of k' must be
//! an integral combination of rows 2 and 3 of h that is ≡ e3 mod p^c.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::padic::{PadicError, PadicNum, Valuation};
use crate::symalg::Q;

/// Field operations plus valuation and residues, enough for the elimination.
pub trait PScalar: Clone + fmt::Debug {
    fn prime(&self) -> u32;
    fn zero_like(&self) -> Self;
    fn is_exact_zero(&self) -> bool;
    /// Exact valuation, or `PrecisionExhausted` when the value is unresolved.
    fn valuation(&self) -> Result<Valuation, PadicError>;
    /// A valuation every point of the value's ball attains or exceeds.
    fn valuation_lower_bound(&self) -> Valuation;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self, PadicError>;
    fn shift(&self, k: i64) -> Self;
    /// Residue mod p^e of an integral element.
    fn residue(&self, e: u32) -> Result<u64, PadicError>;
}

impl PScalar for PadicNum {
    fn prime(&self) -> u32 {
        PadicNum::prime(self)
    }
    fn zero_like(&self) -> Self {
        PadicNum::zero(self.prime())
    }
    fn is_exact_zero(&self) -> bool {
        PadicNum::is_exact_zero(self)
    }
    fn valuation(&self) -> Result<Valuation, PadicError> {
        PadicNum::valuation(self)
    }
    fn valuation_lower_bound(&self) -> Valuation {
        PadicNum::valuation_lower_bound(self)
    }
    fn add(&self, o: &Self) -> Self {
        PadicNum::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        PadicNum::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        PadicNum::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self, PadicError> {
        PadicNum::div(self, o)
    }
    fn shift(&self, k: i64) -> Self {
        PadicNum::shift(self, k)
    }
    fn residue(&self, e: u32) -> Result<u64, PadicError> {
        PadicNum::residue(self, e)
    }
}

/// An exact rational viewed inside Q_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPadic {
    pub p: u32,
    pub x: Q,
}

impl ExactPadic {
    pub fn new(p: u32, x: Q) -> ExactPadic {
        ExactPadic { p, x }
    }

    pub fn int(p: u32, n: i64) -> ExactPadic {
        ExactPadic { p, x: Q::from_integer(n.into()) }
    }
}

fn q_pow(p: u32, e: i64) -> Q {
    Q::from_integer(BigInt::from(p)).pow(e as i32)
}

/// p-adic valuation of a nonzero rational.
pub(crate) fn q_valuation(p: u32, x: &Q) -> i64 {
    let pb = BigInt::from(p);
    let mut v = 0i64;
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    while (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    while (&d % &pb).is_zero() {
        d /= &pb;
        v -= 1;
    }
    v
}

impl PScalar for ExactPadic {
    fn prime(&self) -> u32 {
        self.p
    }
    fn zero_like(&self) -> Self {
        ExactPadic { p: self.p, x: Q::zero() }
    }
    fn is_exact_zero(&self) -> bool {
        self.x.is_zero()
    }
    fn valuation(&self) -> Result<Valuation, PadicError> {
        Ok(self.valuation_lower_bound())
    }
    fn valuation_lower_bound(&self) -> Valuation {
        if self.x.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(q_valuation(self.p, &self.x))
        }
    }
    fn add(&self, o: &Self) -> Self {
        ExactPadic { p: self.p, x: &self.x + &o.x }
    }
    fn sub(&self, o: &Self) -> Self {
        ExactPadic { p: self.p, x: &self.x - &o.x }
    }
    fn mul(&self, o: &Self) -> Self {
        ExactPadic { p: self.p, x: &self.x * &o.x }
    }
    fn div(&self, o: &Self) -> Result<Self, PadicError> {
        if o.x.is_zero() {
            return Err(PadicError::DivisionByZero);
        }
        Ok(ExactPadic { p: self.p, x: &self.x / &o.x })
    }
    fn shift(&self, k: i64) -> Self {
        ExactPadic { p: self.p, x: &self.x * q_pow(self.p, k) }
    }
    fn residue(&self, e: u32) -> Result<u64, PadicError> {
        if self.x.is_zero() {
            return Ok(0);
        }
        if q_valuation(self.p, &self.x) < 0 {
            return Err(PadicError::NotIntegral);
        }
        let m = BigInt::from(self.p).pow(e);
        let d = self.x.denom().mod_floor(&m);
        let n = self.x.numer().mod_floor(&m);
        let inv = d.extended_gcd(&m).x.mod_floor(&m);
        Ok((n * inv).mod_floor(&m).to_u64().expect("residue fits"))
    }
}

/// Torus of the B3 factor: a_i = ϖ^{v_i}·unit, with a2's unit known mod p^c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusReadout {
    pub v1: i64,
    pub v2: i64,
    pub v3: i64,
    pub a2_class: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    Outside,
    Member(TorusReadout),
}

/// Minimal valuation in a row and the first index attaining it.
fn min_val<S: PScalar>(row: &[S; 3]) -> Result<(i64, usize), PadicError> {
    let mut best: Option<(i64, usize)> = None;
    let mut floor = Valuation::Infinite;
    for (j, x) in row.iter().enumerate() {
        match x.valuation() {
            Ok(Valuation::Finite(v)) => {
                if best.is_none_or(|(b, _)| v < b) {
                    best = Some((v, j));
                }
            }
            Ok(Valuation::Infinite) => {}
            Err(PadicError::PrecisionExhausted) => floor = floor.min(x.valuation_lower_bound()),
            Err(e) => return Err(e),
        }
    }
    let (v, j) = best.ok_or(PadicError::PrecisionExhausted)?;
    if floor <= Valuation::Finite(v) {
        return Err(PadicError::PrecisionExhausted);
    }
    Ok((v, j))
}

fn det3<S: PScalar>(g: &[[S; 3]; 3]) -> S {
    let t = |a: usize, b: usize, c: usize| g[0][a].mul(&g[1][b]).mul(&g[2][c]);
    t(0, 1, 2).add(&t(1, 2, 0)).add(&t(2, 0, 1)).sub(&t(0, 2, 1)).sub(&t(1, 0, 2)).sub(&t(2, 1, 0))
}

/// Intermediate data of the elimination, reused by the witness builder.
struct Elimination<S> {
    r2: [S; 3],
    s: [S; 3],
    eps: u64,
    lambda: u64,
    readout: TorusReadout,
}

fn inv_mod(a: i128, m: i128) -> Option<i128> {
    let e = a.extended_gcd(&m);
    (e.gcd.abs() == 1).then(|| e.x.rem_euclid(m))
}

fn eliminate<S: PScalar>(g: &[[S; 3]; 3], c: u32) -> Result<Option<Elimination<S>>, PadicError> {
    let c_i = c as i64;
    let p = g[0][0].prime();
    // Rows 2 and 3 of h = ε⁻¹gε.
    let h2 = [g[2][0].shift(-c_i), g[2][2].clone(), g[2][1].shift(-c_i)];
    let h3 = [g[1][0].clone(), g[1][2].shift(c_i), g[1][1].clone()];

    let (v2, i) = min_val(&h2)?;
    let r2 = h2.clone().map(|x| x.shift(-v2));
    let (v3, _) = min_val(&h3)?;
    let r3 = h3.map(|x| x.shift(-v3));

    let kappa = r3[i].div(&r2[i])?;
    let mut s0: [S; 3] = std::array::from_fn(|j| r3[j].sub(&kappa.mul(&r2[j])));
    s0[i] = s0[i].zero_like();
    let (vs, _) = min_val(&s0)?;
    let s = s0.map(|x| x.shift(-vs));

    let modulus = (p as i128).pow(c);
    let rs: Vec<i128> = s.iter().map(|x| x.residue(c).map(|r| r as i128)).collect::<Result<_, _>>()?;
    let rr: Vec<i128> = r2.iter().map(|x| x.residue(c).map(|r| r as i128)).collect::<Result<_, _>>()?;

    // ε·s + λ·r2 ≡ e3 (mod p^c), solved on a 2×2 minor that is a unit mod p.
    let target = [0i128, 0, 1];
    let mut solved = None;
    for (a, b, o) in [(0usize, 1usize, 2usize), (0, 2, 1), (1, 2, 0)] {
        let det = (rs[a] * rr[b] - rs[b] * rr[a]).rem_euclid(modulus);
        if let Some(di) = inv_mod(det, modulus) {
            let eps = ((target[a] * rr[b] - target[b] * rr[a]).rem_euclid(modulus) * di).rem_euclid(modulus);
            let lam = ((rs[a] * target[b] - rs[b] * target[a]).rem_euclid(modulus) * di).rem_euclid(modulus);
            solved = Some((eps, lam, o));
            break;
        }
    }
    let (eps, lam, o) = solved.ok_or(PadicError::Singular)?;
    if (eps * rs[o] + lam * rr[o] - target[o]).rem_euclid(modulus) != 0 || eps % p as i128 == 0 {
        return Ok(None);
    }

    let vdet = match det3(g).valuation()? {
        Valuation::Finite(v) => v,
        Valuation::Infinite => return Err(PadicError::Singular),
    };
    // a3 ↔ b'22 = ϖ^{v2}·unit, a2 ↔ b'33 = ε⁻¹ϖ^{vs+v3}.
    let a3 = v2;
    let a2 = vs + v3;
    let class = inv_mod(eps, modulus).expect("unit") as u64;
    let readout = TorusReadout { v1: vdet - a2 - a3, v2: a2, v3: a3, a2_class: class };
    Ok(Some(Elimination { r2, s, eps: eps as u64, lambda: lam as u64, readout }))
}

/// Decides g ∈ B3·K_c and returns the torus valuations and a2's class mod p^c.
pub fn section_support<S: PScalar>(g: &[[S; 3]; 3], c: u32) -> Result<Support, PadicError> {
    Ok(match eliminate(g, c)? {
        None => Support::Outside,
        Some(e) => Support::Member(e.readout),
    })
}

pub type QMat = [[Q; 3]; 3];

fn qmul(a: &QMat, b: &QMat) -> QMat {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum()))
}

fn qdet(g: &QMat) -> Q {
    let t = |a: usize, b: usize, c: usize| &g[0][a] * &g[1][b] * &g[2][c];
    t(0, 1, 2) + t(1, 2, 0) + t(2, 0, 1) - t(0, 2, 1) - t(1, 0, 2) - t(2, 1, 0)
}

fn qinv(g: &QMat) -> QMat {
    let d = qdet(g);
    let cof = |i: usize, j: usize| {
        let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let cc: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        let m = &g[r[0]][cc[0]] * &g[r[1]][cc[1]] - &g[r[0]][cc[1]] * &g[r[1]][cc[0]];
        if (i + j).is_multiple_of(2) {
            m
        } else {
            -m
        }
    };
    std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i) / &d))
}

fn epsilon(p: u32, c: u32) -> QMat {
    let (o, z) = (Q::one(), Q::zero());
    [[o.clone(), z.clone(), z.clone()], [z.clone(), z.clone(), o], [z.clone(), q_pow(p, c as i64), z]]
}

/// Checks k ∈ K_c entrywise: rows (o, o, p^{-c}), (p^c, 1+p^c, o), (p^c, p^c, o), unit determinant.
pub fn in_kc(k: &QMat, p: u32, c: u32) -> bool {
    let c = c as i64;
    let val = |x: &Q| if x.is_zero() { i64::MAX } else { q_valuation(p, x) };
    let bounds = [[0, 0, -c], [c, 0, 0], [c, c, 0]];
    for i in 0..3 {
        for j in 0..3 {
            if val(&k[i][j]) < bounds[i][j] {
                return false;
            }
        }
    }
    val(&(&k[1][1] - Q::one())) >= c && val(&qdet(k)) == 0
}

/// An explicit factorization g = b·k with b upper triangular and k ∈ K_c.
pub fn section_witness(g: &QMat, p: u32, c: u32) -> Result<Option<(QMat, QMat)>, PadicError> {
    let ge: [[ExactPadic; 3]; 3] = g.clone().map(|r| r.map(|x| ExactPadic::new(p, x)));
    let Some(e) = eliminate(&ge, c)? else {
        return Ok(None);
    };
    let eps = Q::from_integer(e.eps.into());
    let lam = Q::from_integer(e.lambda.into());
    let k2: [Q; 3] = e.r2.map(|x| x.x);
    let k3: [Q; 3] = std::array::from_fn(|j| &eps * &e.s[j].x + &lam * &k2[j]);
    // Complete with a standard basis row giving a unit determinant.
    let k1 = (0..3)
        .map(|j| std::array::from_fn(|i| if i == j { Q::one() } else { Q::zero() }))
        .find(|row: &[Q; 3]| {
            let d = qdet(&[row.clone(), k2.clone(), k3.clone()]);
            !d.is_zero() && q_valuation(p, &d) == 0
        })
        .ok_or(PadicError::Singular)?;
    let kp: QMat = [k1, k2, k3];
    let eps_m = epsilon(p, c);
    let eps_inv = qinv(&eps_m);
    let h = qmul(&qmul(&eps_inv, g), &eps_m);
    let bp = qmul(&h, &qinv(&kp));
    let b = qmul(&qmul(&eps_m, &bp), &eps_inv);
    let k = qmul(&qmul(&eps_m, &kp), &eps_inv);
    Ok(Some((b, k)))
}

/// Exact a2 readout from an explicit b: ϖ-adic valuation and unit class mod p^c.
pub fn diag_readout(b: &QMat, p: u32, c: u32) -> Option<TorusReadout> {
    let v = |x: &Q| (!x.is_zero()).then(|| q_valuation(p, x));
    let (v1, v2, v3) = (v(&b[0][0])?, v(&b[1][1])?, v(&b[2][2])?);
    let unit = &b[1][1] * q_pow(p, -v2);
    let class = ExactPadic::new(p, unit).residue(c).ok()?;
    Some(TorusReadout { v1, v2, v3, a2_class: class })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat;

    fn qm(rows: [[i64; 3]; 3]) -> QMat {
        rows.map(|r| r.map(|x| rat(x, 1)))
    }

    fn exact(g: &QMat, p: u32) -> [[ExactPadic; 3]; 3] {
        g.clone().map(|r| r.map(|x| ExactPadic::new(p, x)))
    }

    fn is_upper(b: &QMat) -> bool {
        b[1][0].is_zero() && b[2][0].is_zero() && b[2][1].is_zero()
    }

    #[test]
    fn long_weyl_element_after_translation() {
        // w·u(0,0,ϖ^{-c}) has a1 = ϖ^c, a2 = 1, a3 = ϖ^{-c}.
        for (p, c) in [(3u32, 1u32), (5, 2), (2, 2)] {
            let mut g = qm([[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
            g[2][2] = q_pow(p, -(c as i64));
            let s = section_support(&exact(&g, p), c).unwrap();
            let ci = c as i64;
            assert_eq!(s, Support::Member(TorusReadout { v1: ci, v2: 0, v3: -ci, a2_class: 1 }));
            let (b, k) = section_witness(&g, p, c).unwrap().unwrap();
            assert!(is_upper(&b) && in_kc(&k, p, c));
            assert_eq!(qmul(&b, &k), g);
        }
    }

    #[test]
    fn lower_unipotent_outside_conductor() {
        let (p, c) = (3u32, 2u32);
        for x in [rat(1, 1), rat(3, 1), rat(1, 3), rat(-2, 9)] {
            let mut g = qm([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
            g[1][0] = x.clone();
            assert_eq!(section_support(&exact(&g, p), c).unwrap(), Support::Outside, "x = {x}");
            let mut g = qm([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
            g[2][1] = x;
            assert_eq!(section_support(&exact(&g, p), c).unwrap(), Support::Outside);
        }
        let mut g = qm([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        g[1][0] = rat(9, 1);
        assert!(matches!(section_support(&exact(&g, p), c).unwrap(), Support::Member(_)));
    }

    #[test]
    fn twisted_weyl_elements() {
        // w'(r) is outside exactly when r ∈ p; for r ∉ p an explicit factorization exists.
        for (p, c) in [(2u32, 1u32), (3, 1), (5, 2)] {
            let pi = p as i64;
            for (r, inside) in [
                (rat(0, 1), false),
                (rat(pi, 1), false),
                (rat(7 * pi * pi, 1), false),
                (rat(1, 1), true),
                (rat(1, pi), true),
                (rat(-1, pi * pi), true),
            ] {
                let g: QMat = [
                    [rat(0, 1), rat(0, 1), rat(1, 1)],
                    [rat(1, 1), rat(0, 1), rat(0, 1)],
                    [r.clone(), rat(1, 1), rat(0, 1)],
                ];
                let s = section_support(&exact(&g, p), c).unwrap();
                assert_eq!(matches!(s, Support::Member(_)), inside, "p={p} c={c} r={r}");
                match section_witness(&g, p, c).unwrap() {
                    Some((b, k)) => {
                        assert!(inside);
                        assert!(is_upper(&b) && in_kc(&k, p, c));
                        assert_eq!(qmul(&b, &k), g);
                    }
                    None => assert!(!inside),
                }
            }
        }
    }

    #[test]
    fn ball_and_exact_scalars_agree() {
        let (p, c) = (3u32, 1u32);
        let g: QMat = [
            [rat(0, 1), rat(0, 1), rat(1, 1)],
            [rat(0, 1), rat(1, 1), rat(2, 9)],
            [rat(1, 1), rat(1, 27), rat(-5, 81)],
        ];
        let balls = g.clone().map(|r| r.map(|x| PadicNum::from_rational(p, &x, 20)));
        let a = section_support(&balls, c).unwrap();
        let b = section_support(&exact(&g, p), c).unwrap();
        assert_eq!(a, b);
        if let Some((bm, k)) = section_witness(&g, p, c).unwrap() {
            assert!(is_upper(&bm) && in_kc(&k, p, c));
            assert_eq!(qmul(&bm, &k), g);
            let Support::Member(r) = b else { panic!("witness without membership") };
            assert_eq!(diag_readout(&bm, p, c), Some(r));
        }
    }

    #[test]
    fn exhausted_balls_are_reported() {
        let p = 3;
        let one = PadicNum::from_int(p, 1, 4);
        let z = PadicNum::zero(p);
        let g = [[z, z, one], [z, one, PadicNum::small(p, -3)], [one, PadicNum::small(p, -5), PadicNum::small(p, -6)]];
        assert_eq!(section_support(&g, 1), Err(PadicError::PrecisionExhausted));
    }
}
