//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! Elements are stored in the group ring Q[x]/(x^n − 1), where sums of roots of
//! unity are cheap; comparison reduces modulo the cyclotomic polynomial Φ_n.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::symalg::Q;

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_poly(n: u32) -> Vec<i64> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("cache poisoned").get(&n) {
        return v.clone();
    }
    let v = compute_cyclotomic(n);
    cache.lock().expect("cache poisoned").insert(n, v.clone());
    v
}

fn compute_cyclotomic(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n − 1 divided by Φ_d for every proper divisor d.
    let mut num: Vec<i64> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = div_monic(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0), "cyclotomic division not exact");
    q
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Element of Q(ζ_n) with ζ_n = exp(2πi/n).
#[derive(Clone, Debug)]
pub struct Cyclo {
    n: u32,
    coeffs: Vec<Q>,
}

impl Cyclo {
    pub fn zero(n: u32) -> Cyclo {
        Cyclo { n, coeffs: vec![Q::zero(); n as usize] }
    }

    pub fn rational(n: u32, r: Q) -> Cyclo {
        let mut z = Cyclo::zero(n);
        z.coeffs[0] = r;
        z
    }

    /// ζ_n^a.
    pub fn root(n: u32, a: i64) -> Cyclo {
        let mut z = Cyclo::zero(n);
        z.coeffs[a.rem_euclid(n as i64) as usize] = Q::one();
        z
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// Adds r·ζ_n^a in place.
    pub fn add_root(&mut self, a: i64, r: &Q) {
        let i = a.rem_euclid(self.n as i64) as usize;
        self.coeffs[i] += r;
    }

    pub fn scale(&self, r: &Q) -> Cyclo {
        Cyclo { n: self.n, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Re-embeds into Q(ζ_m) for a multiple m of n.
    pub fn lift(&self, m: u32) -> Cyclo {
        assert!(m.is_multiple_of(self.n), "Q(ζ_{}) does not embed in Q(ζ_{m})", self.n);
        let k = (m / self.n) as usize;
        let mut z = Cyclo::zero(m);
        for (i, c) in self.coeffs.iter().enumerate() {
            z.coeffs[i * k] = c.clone();
        }
        z
    }

    /// Reduced coordinates modulo Φ_n, length φ(n).
    pub fn canonical(&self) -> Vec<Q> {
        let phi = cyclotomic_poly(self.n);
        let d = phi.len() - 1;
        let mut r = self.coeffs.clone();
        for i in (d..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = r[i].clone();
            for (j, pj) in phi.iter().enumerate() {
                if *pj != 0 {
                    r[i - d + j] -= &c * Q::from_integer((*pj).into());
                }
            }
        }
        r.truncate(d);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().iter().all(|c| c.is_zero())
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<Q> {
        let c = self.canonical();
        if c.iter().skip(1).all(|x| x.is_zero()) {
            Some(c.first().cloned().unwrap_or_else(Q::zero))
        } else {
            None
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let mut z = Complex64::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let th = 2.0 * std::f64::consts::PI * i as f64 / self.n as f64;
                z += Complex64::from_polar(1.0, th) * c.to_f64().unwrap_or(f64::NAN);
            }
        }
        z
    }

    fn common(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        if a.n == b.n {
            return (a.clone(), b.clone());
        }
        let m = num_integer::lcm(a.n, b.n);
        (a.lift(m), b.lift(m))
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Cyclo::common(self, other);
        (&a - &b).is_zero()
    }
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        let (mut a, b) = Cyclo::common(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        a
    }
}

impl AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, rhs: &Cyclo) {
        *self = &*self + rhs;
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self + &(-rhs)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        let (a, b) = Cyclo::common(self, rhs);
        let n = a.n as usize;
        let mut out = Cyclo::zero(a.n);
        for (i, x) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out.coeffs[(i + j) % n] += x * y;
            }
        }
        out
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        let mut first = true;
        for (i, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{x}")?;
            } else {
                write!(f, "{x}*z{}^{i}", self.n)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(12).len() as u64 - 1, euler_phi(12));
    }

    #[test]
    fn sum_of_primitive_roots_is_mobius() {
        for n in [5u32, 9, 12, 25] {
            let mut s = Cyclo::zero(n);
            for a in 1..n {
                if num_integer::gcd(a, n) == 1 {
                    s.add_root(a as i64, &Q::one());
                }
            }
            let mu = match n {
                5 => -1,
                12 => 0,
                _ => 0,
            };
            assert_eq!(s.as_rational(), Some(rat(mu, 1)), "n={n}");
        }
    }

    #[test]
    fn embedding_and_product() {
        let i = Cyclo::root(4, 1);
        assert_eq!((&i * &i).as_rational(), Some(rat(-1, 1)));
        let w = Cyclo::root(3, 1);
        let prod = &i * &w;
        assert_eq!(prod.order(), 12);
        assert_eq!(prod, Cyclo::root(12, 7));
        assert!((prod.to_complex() - Complex64::from_polar(1.0, 7.0 * std::f64::consts::PI / 6.0)).norm() < 1e-12);
    }
}
