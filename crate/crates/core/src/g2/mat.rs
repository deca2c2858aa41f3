use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::symalg::{rat, LaurentPoly, Symbol, SymError, Q};

/// Square matrix over the Laurent ring, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    n: usize,
    e: Vec<LaurentPoly>,
}

impl Mat {
    pub fn zero(n: usize) -> Mat {
        Mat { n, e: vec![LaurentPoly::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Mat {
        Mat::from_fn(n, |i, j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> LaurentPoly) -> Mat {
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                e.push(f(i, j));
            }
        }
        Mat { n, e }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Mat {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Mat { n, e: rows.into_iter().flatten().collect() }
    }

    /// Σ coeff·E_{ij} with 1-based indices.
    pub fn units(n: usize, entries: &[(usize, usize, i64)]) -> Mat {
        let mut m = Mat::zero(n);
        for &(i, j, c) in entries {
            let v = m.get(i - 1, j - 1) + LaurentPoly::int(c);
            m.set(i - 1, j - 1, v);
        }
        m
    }

    pub fn diag(d: &[LaurentPoly]) -> Mat {
        Mat::from_fn(d.len(), |i, j| if i == j { d[i].clone() } else { LaurentPoly::zero() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.e[i * self.n + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly)> {
        self.e.iter().enumerate().map(move |(k, v)| (k / self.n, k % self.n, v))
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(LaurentPoly::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &LaurentPoly) -> Mat {
        Mat { n: self.n, e: self.e.iter().map(|v| v * c).collect() }
    }

    pub fn scale_q(&self, c: &Q) -> Mat {
        Mat { n: self.n, e: self.e.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn trace(&self) -> LaurentPoly {
        let mut t = LaurentPoly::zero();
        for i in 0..self.n {
            t += self.get(i, i);
        }
        t
    }

    pub fn bracket(&self, other: &Mat) -> Mat {
        &(self * other) - &(other * self)
    }

    pub fn subs(&self, s: Symbol, v: &LaurentPoly) -> Result<Mat, SymError> {
        let e = self.e.iter().map(|x| x.subs(s, v)).collect::<Result<Vec<_>, _>>()?;
        Ok(Mat { n: self.n, e })
    }

    /// exp(t·X) for nilpotent X; `None` if X is not nilpotent.
    pub fn exp_nilpotent(&self, t: &LaurentPoly) -> Option<Mat> {
        let tx = self.scale(t);
        let mut sum = Mat::identity(self.n);
        let mut term = Mat::identity(self.n);
        for k in 1..=self.n {
            term = (&term * &tx).scale_q(&rat(1, k as i64));
            if term.is_zero() {
                return Some(sum);
            }
            sum = &sum + &term;
        }
        None
    }

    /// log(g) for unipotent g; `None` if g − 1 is not nilpotent.
    pub fn log_unipotent(&self) -> Option<Mat> {
        let u = self - &Mat::identity(self.n);
        let mut sum = Mat::zero(self.n);
        let mut power = Mat::identity(self.n);
        for k in 1..=self.n {
            power = &power * &u;
            if power.is_zero() {
                return Some(sum);
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            sum = &sum + &power.scale_q(&rat(sign, k as i64));
        }
        (&power * &u).is_zero().then_some(sum)
    }

    /// Fraction-free Gaussian elimination with exact division.
    pub fn det(&self) -> LaurentPoly {
        let n = self.n;
        let mut a = self.clone();
        let mut sign = LaurentPoly::one();
        let mut prev = LaurentPoly::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                    return LaurentPoly::zero();
                };
                for j in 0..n {
                    a.e.swap(k * n + j, r * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                    a.set(i, j, v.div_exact(&prev).expect("Bareiss division is exact"));
                }
                a.set(i, k, LaurentPoly::zero());
            }
            prev = a.get(k, k).clone();
        }
        sign * prev
    }

    /// Adjugate; the inverse when the determinant is 1.
    pub fn adjugate(&self) -> Mat {
        let n = self.n;
        Mat::from_fn(n, |i, j| {
            let minor = Mat::from_fn(n - 1, |r, c| {
                let rr = if r < j { r } else { r + 1 };
                let cc = if c < i { c } else { c + 1 };
                self.get(rr, cc).clone()
            });
            let d = minor.det();
            if (i + j) % 2 == 0 {
                d
            } else {
                -d
            }
        })
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, o: &Mat) -> Mat {
        Mat { n: self.n, e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, o: &Mat) -> Mat {
        Mat { n: self.n, e: self.e.iter().zip(&o.e).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat { n: self.n, e: self.e.iter().map(|a| -a).collect() }
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, o: &Mat) -> Mat {
        assert_eq!(self.n, o.n);
        let n = self.n;
        Mat::from_fn(n, |i, j| {
            let mut s = LaurentPoly::zero();
            for k in 0..n {
                let (a, b) = (self.get(i, k), o.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    s += &(a * b);
                }
            }
            s
        })
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::var;

    #[test]
    fn det_and_adjugate() {
        let (a, b) = (var("a"), var("b"));
        let m = Mat::from_rows(vec![
            vec![a.clone(), LaurentPoly::int(1), LaurentPoly::zero()],
            vec![LaurentPoly::zero(), b.clone(), LaurentPoly::int(2)],
            vec![LaurentPoly::int(1), LaurentPoly::zero(), LaurentPoly::one()],
        ]);
        assert_eq!(m.det(), &a * &b + LaurentPoly::int(2));
        assert_eq!(&m * &m.adjugate(), Mat::identity(3).scale(&m.det()));
    }

    #[test]
    fn exp_and_log_are_inverse() {
        let x = Mat::units(3, &[(1, 2, 1), (2, 3, -2), (1, 3, 5)]);
        let g = x.exp_nilpotent(&var("t")).unwrap();
        assert_eq!(g.log_unipotent().unwrap(), x.scale(&var("t")));
        assert!(Mat::identity(2).exp_nilpotent(&LaurentPoly::one()).is_none());
    }
}
