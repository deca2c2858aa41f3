use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use super::num::{inv_mod, pow_u64};
use super::PadicError;
use crate::cyclo::{euler_phi, Cyclo};
use crate::symalg::Q;

fn q_pow(p: u32, e: i64) -> Q {
    Q::from_integer(p.into()).pow(e as i32)
}

/// Additive character ψ(x) = exp(2πi·{ϖ^{-d}x}) trivial exactly on p^d.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AdditiveChar {
    pub p: u32,
    pub conductor: i32,
}

impl AdditiveChar {
    pub fn unramified(p: u32) -> AdditiveChar {
        AdditiveChar { p, conductor: 0 }
    }

    /// ψ^{±1}(a/p^j) as a power of ζ_{p^j}: returns (j, exponent); j = 0 means 1.
    pub fn exponent(&self, x: &Q, inverse: bool) -> (u32, i64) {
        let x = x * q_pow(self.p, -(self.conductor as i64));
        let mut j = 0u32;
        let mut d = x.denom().clone();
        let pb = num_bigint::BigInt::from(self.p);
        while (&d % &pb).is_zero() {
            d /= &pb;
            j += 1;
        }
        if j == 0 {
            return (0, 0);
        }
        let m = pow_u64(self.p, j);
        let mb = num_bigint::BigInt::from(m);
        // {x} = a/p^j with a ≡ numerator·(denominator prime-to-p part)^{-1} mod p^j.
        let num = num_integer::Integer::mod_floor(x.numer(), &mb);
        let den = num_integer::Integer::mod_floor(&d, &mb);
        let num: u64 = num.try_into().expect("reduced");
        let den: u64 = den.try_into().expect("reduced");
        let a = (num as u128 * inv_mod(den, m) as u128 % m as u128) as i64;
        (j, if inverse { -a } else { a })
    }

    pub fn eval(&self, x: &Q) -> Complex64 {
        let (j, a) = self.exponent(x, false);
        if j == 0 {
            return Complex64::one();
        }
        let m = pow_u64(self.p, j) as f64;
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * a as f64 / m)
    }
}

/// Multiplicative character of Q_p^× of conductor c, given on (Z/p^c)^× by a
/// generator's image and at ϖ by a root of unity.
#[derive(Clone, Debug, Serialize)]
pub struct MultChar {
    pub p: u32,
    pub c: u32,
    /// χ(g) = ζ_φ^index for the least primitive root g mod p^c, φ = φ(p^c).
    pub index: u64,
    /// χ(ϖ) = exp(2πi·num/den).
    pub varpi: (i64, u32),
    generator: u64,
    /// Discrete log of each residue mod p^c, `u64::MAX` for non-units.
    log: Vec<u64>,
}

fn primitive_root(p: u32, c: u32) -> u64 {
    let m = pow_u64(p, c);
    let phi = euler_phi(m);
    'cand: for g in 2..m.max(3) {
        if g % p as u64 == 0 {
            continue;
        }
        let mut x = 1u64;
        for k in 1..phi {
            x = x * g % m;
            if x == 1 {
                let _ = k;
                continue 'cand;
            }
        }
        return g;
    }
    1
}

impl MultChar {
    pub fn new(p: u32, c: u32, index: u64, varpi: (i64, u32)) -> Result<MultChar, PadicError> {
        if c == 0 {
            return Err(PadicError::Conductor("a ramified character needs c ≥ 1".into()));
        }
        let m = pow_u64(p, c);
        let phi = euler_phi(m);
        if p == 2 && c > 2 {
            return Err(PadicError::Conductor("(Z/2^c)^× is not cyclic for c > 2".into()));
        }
        let index = index % phi;
        // Minimal conductor: nontrivial on 1 + p^{c-1}, the subgroup of index φ(p^{c-1}).
        let sub = phi / euler_phi(pow_u64(p, c - 1));
        let exp_on_sub = euler_phi(pow_u64(p, c - 1));
        let trivial_on_sub = (index * exp_on_sub).is_multiple_of(phi);
        let _ = sub;
        if trivial_on_sub {
            return Err(PadicError::Conductor(format!("index {index} gives conductor < {c} for p = {p}")));
        }
        let g = primitive_root(p, c);
        let mut log = vec![u64::MAX; m as usize];
        let mut x = 1u64;
        for k in 0..phi {
            log[x as usize] = k;
            x = x * g % m;
        }
        Ok(MultChar { p, c, index, varpi, generator: g, log })
    }

    /// All characters of exact conductor c, with χ(ϖ) = 1.
    pub fn all_primitive(p: u32, c: u32) -> Vec<MultChar> {
        let phi = euler_phi(pow_u64(p, c));
        (0..phi).filter_map(|j| MultChar::new(p, c, j, (0, 1)).ok()).collect()
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn phi(&self) -> u64 {
        euler_phi(pow_u64(self.p, self.c))
    }

    /// Order n of the cyclotomic field holding every value.
    pub fn field_order(&self) -> u32 {
        num_integer::lcm(self.phi() as u32, self.varpi.1)
    }

    /// χ(u) for a unit residue u mod p^c as a power of ζ_{field_order}.
    pub fn unit_exponent(&self, u: u64) -> Result<i64, PadicError> {
        let m = pow_u64(self.p, self.c);
        let l = self.log[(u % m) as usize];
        if l == u64::MAX {
            return Err(PadicError::NotAUnit);
        }
        let n = self.field_order() as u64;
        Ok(((l * self.index % self.phi()) * (n / self.phi())) as i64)
    }

    /// χ(ϖ^k·u) as a power of ζ_{field_order}.
    pub fn exponent(&self, k: i64, u: u64) -> Result<i64, PadicError> {
        let n = self.field_order() as i64;
        let w = self.varpi.0 * (n / self.varpi.1 as i64);
        Ok((self.unit_exponent(u)? + k * w).rem_euclid(n))
    }

    pub fn eval(&self, k: i64, u: u64) -> Result<Complex64, PadicError> {
        let e = self.exponent(k, u)?;
        let n = self.field_order() as f64;
        Ok(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / n))
    }

    /// Table of χ on (Z/p^c)^× for debugging dumps.
    pub fn table(&self) -> Vec<(u64, i64)> {
        let m = pow_u64(self.p, self.c);
        (0..m).filter(|u| u % self.p as u64 != 0).map(|u| (u, self.unit_exponent(u).expect("unit"))).collect()
    }
}

/// Representatives of p^L·o / p^{M'}·o.
#[derive(Clone, Copy, Debug)]
pub struct CosetGrid {
    pub p: u32,
    pub lower: i64,
    pub cutoff: i64,
}

impl CosetGrid {
    pub fn new(p: u32, lower: i64, cutoff: i64) -> CosetGrid {
        assert!(cutoff >= lower, "empty grid");
        CosetGrid { p, lower, cutoff }
    }

    pub fn len(&self) -> u64 {
        pow_u64(self.p, (self.cutoff - self.lower) as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Haar volume of one cell, normalized by vol(o) = 1.
    pub fn cell_volume(&self) -> Q {
        q_pow(self.p, -self.cutoff)
    }

    /// Representatives ϖ^L·j for 0 ≤ j < p^{M'−L}.
    pub fn iter(&self) -> impl Iterator<Item = (u64, Q)> + '_ {
        let base = q_pow(self.p, self.lower);
        (0..self.len()).map(move |j| (j, &base * Q::from_integer(j.into())))
    }
}

/// ∫_{p^k − p^{k+1}} ψ^{-1}(x) dx by explicit summation over a coset grid.
pub fn char_sum_additive(k: i64, psi: &AdditiveChar) -> Cyclo {
    let depth = (psi.conductor as i64 - k).max(0) as u32;
    let n = pow_u64(psi.p, depth.max(1)) as u32;
    let grid = CosetGrid::new(psi.p, k, (k + 1).max(psi.conductor as i64));
    let vol = grid.cell_volume();
    let mut acc = Cyclo::zero(n);
    for (j, x) in grid.iter() {
        if j % psi.p as u64 == 0 {
            continue;
        }
        let (jj, a) = psi.exponent(&x, true);
        let scale = if jj == 0 { 0 } else { n as i64 / pow_u64(psi.p, jj) as i64 };
        acc.add_root(a * scale, &vol);
    }
    acc
}

/// Closed form of the additive sum: q^{-k}(1 − q^{-1}), −1, or 0 (unramified ψ).
pub fn char_sum_additive_closed(k: i64, p: u32) -> Q {
    match k {
        k if k >= 0 => q_pow(p, -k) * (Q::one() - q_pow(p, -1)),
        -1 => -Q::one(),
        _ => Q::zero(),
    }
}

/// ∫_{y0 + p^L} χ(y) dy, summing over cells on which χ is constant. The ball
/// p^L around 0 is a union of shells ϖ^j·o^×, each integrating to
/// χ(ϖ)^j q^{-j} ∫_{o^×} χ; that unit integral is summed explicitly and must vanish.
fn ball_integral(chi: &MultChar, y0: i128, level: i64, acc: &mut Cyclo) -> Result<(), PadicError> {
    let p = chi.p as i128;
    let c = chi.c as i64;
    let n = acc.order() as i64;
    if level >= 0 && y0.rem_euclid(p.pow(level as u32)) == 0 {
        let mut unit_sum = Cyclo::zero(acc.order());
        let m = pow_u64(chi.p, chi.c);
        for u in 0..m {
            if u % chi.p as u64 != 0 {
                unit_sum.add_root(chi.unit_exponent(u)?, &Q::one());
            }
        }
        if !unit_sum.is_zero() {
            return Err(PadicError::Conductor("unit sum of a ramified character must vanish".into()));
        }
        return Ok(());
    }
    // y0 ≠ 0 mod p^level: valuation j of every point is v(y0) < level.
    let mut j = 0i64;
    let mut u = y0;
    while u % p == 0 {
        u /= p;
        j += 1;
    }
    if level >= j + c {
        let m = p.pow(c as u32);
        let e = chi.exponent(j, u.rem_euclid(m) as u64)?;
        acc.add_root(e * (n / chi.field_order() as i64), &q_pow(chi.p, -level));
        return Ok(());
    }
    let step = p.pow(level as u32);
    for d in 0..p {
        ball_integral(chi, y0 + d * step, level + 1, acc)?;
    }
    Ok(())
}

/// ∫_{o^×} μ2(1 + ϖ^i x) dx by finite summation. Substituting y = 1 + ϖ^i x,
/// the domain is (1 + p^i) − (1 + p^{i+1}) with dx = q^i dy.
pub fn char_sum_mult(i: i64, mu2: &MultChar) -> Result<Cyclo, PadicError> {
    let n = mu2.field_order();
    let p = mu2.p as i128;
    let balls = |lvl: i64| -> Result<Cyclo, PadicError> {
        let mut acc = Cyclo::zero(n);
        if lvl >= 0 {
            ball_integral(mu2, 1, lvl, &mut acc)?;
        } else {
            // 1 + p^lvl = p^lvl: split into the p^{-lvl} translates of o.
            let k = (-lvl) as u32;
            let mut sub = Cyclo::zero(n);
            ball_integral(mu2, 0, 0, &mut sub)?;
            let mut total = Cyclo::zero(n);
            for r in 0..p.pow(k) {
                // y = r·ϖ^lvl + o; the translate with r = 0 is o itself.
                if r == 0 {
                    total += &sub;
                    continue;
                }
                let mut piece = Cyclo::zero(n);
                let mut v = 0;
                let mut rr = r;
                while rr % p == 0 {
                    rr /= p;
                    v += 1;
                }
                // y = ϖ^{lvl+v}(rr + p^{k−v}): unit part known mod p^{k−v}.
                let depth = (k as i64 - v) as u32;
                let mut inner = Cyclo::zero(n);
                ball_integral(mu2, rr, depth as i64, &mut inner)?;
                // Rescale: y = ϖ^{lvl+v}·u with u in rr + p^depth; dy = q^{-(lvl+v)} du.
                let shift = mu2.exponent(lvl + v, 1)? * (n as i64 / mu2.field_order() as i64);
                piece.add_root(shift, &q_pow(mu2.p, -(lvl + v)));
                total += &(&piece * &inner);
            }
            acc = total;
        }
        Ok(acc)
    };
    let outer = balls(i)?;
    let inner = balls(i + 1)?;
    Ok((&outer - &inner).scale(&q_pow(mu2.p, i)))
}

/// Closed form: 1 − q^{-1} if i ≥ c; −q^{-1} if i = c − 1; 0 otherwise.
pub fn char_sum_mult_closed(i: i64, p: u32, c: u32) -> Q {
    let c = c as i64;
    if i >= c {
        Q::one() - q_pow(p, -1)
    } else if i == c - 1 {
        -q_pow(p, -1)
    } else {
        Q::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat;

    #[test]
    fn additive_examples() {
        let psi = AdditiveChar::unramified(3);
        assert_eq!(char_sum_additive(0, &psi).as_rational(), Some(rat(2, 3)));
        assert_eq!(char_sum_additive(-1, &AdditiveChar::unramified(5)).as_rational(), Some(rat(-1, 1)));
        assert_eq!(char_sum_additive(-3, &psi).as_rational(), Some(Q::zero()));
    }

    #[test]
    fn additive_character_is_a_homomorphism() {
        let psi = AdditiveChar::unramified(5);
        let (x, y) = (rat(7, 125), rat(-13, 25));
        let lhs = psi.eval(&(&x + &y));
        assert!((lhs - psi.eval(&x) * psi.eval(&y)).norm() < 1e-12);
        assert!((psi.eval(&rat(17, 1)) - Complex64::one()).norm() < 1e-15);
    }

    #[test]
    fn multiplicative_conductor_is_enforced() {
        assert!(MultChar::new(2, 1, 0, (0, 1)).is_err());
        assert!(MultChar::new(3, 2, 3, (0, 1)).is_err());
        assert!(MultChar::new(3, 2, 1, (0, 1)).is_ok());
        assert_eq!(MultChar::all_primitive(5, 1).len(), 3);
        assert_eq!(MultChar::all_primitive(5, 2).len(), 16);
    }

    #[test]
    fn multiplicative_examples() {
        let chi = MultChar::new(3, 1, 1, (0, 1)).unwrap();
        assert_eq!(char_sum_mult(1, &chi).unwrap().as_rational(), Some(rat(2, 3)));
        assert_eq!(char_sum_mult(0, &chi).unwrap().as_rational(), Some(rat(-1, 3)));
        let chi = MultChar::new(5, 2, 1, (1, 4)).unwrap();
        assert_eq!(char_sum_mult(0, &chi).unwrap().as_rational(), Some(Q::zero()));
        assert_eq!(char_sum_mult(-2, &chi).unwrap().as_rational(), Some(Q::zero()));
    }

    #[test]
    fn grid_counts() {
        let g = CosetGrid::new(3, -2, 1);
        assert_eq!(g.len(), 27);
        assert_eq!(g.cell_volume() * Q::from_integer(g.len().into()), rat(9, 1));
    }
}
