use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::cyclo::Cyclo;
use crate::padic::{pow_u64, MultChar};
use crate::symalg::Q;
use crate::whittaker::TorusReadout;

/// Exact weights of the integrand values: for each torus readout and additive
/// phase ψ⁻¹ = ζ_{p^N}^phase, the total measure as numerator / p^D.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Histogram {
    pub p: u32,
    pub denom_exp: u32,
    pub psi_order_exp: u32,
    pub bins: BTreeMap<(TorusReadout, u64), i128>,
}

/// Compensated complex summation.
#[derive(Clone, Copy, Default)]
pub struct KahanSum {
    sum: Complex64,
    comp: Complex64,
}

impl KahanSum {
    pub fn add(&mut self, x: Complex64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> Complex64 {
        self.sum
    }
}

/// An exactly representable parameter: rational, or a Gaussian rational of modulus one.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactParam {
    Rational(Q),
    UnitGaussian { re: Q, im: Q },
}

impl ExactParam {
    pub fn unit_gaussian(re: Q, im: Q) -> Option<ExactParam> {
        (&re * &re + &im * &im == Q::one()).then_some(ExactParam::UnitGaussian { re, im })
    }

    pub fn to_complex(&self) -> Complex64 {
        use num_traits::ToPrimitive;
        match self {
            ExactParam::Rational(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            ExactParam::UnitGaussian { re, im } => {
                Complex64::new(re.to_f64().unwrap_or(f64::NAN), im.to_f64().unwrap_or(f64::NAN))
            }
        }
    }

    /// The value to the power e inside Q(ζ_4).
    pub fn pow(&self, e: i64) -> Cyclo {
        match self {
            ExactParam::Rational(r) => Cyclo::rational(4, r.pow(e as i32)),
            ExactParam::UnitGaussian { re, im } => {
                let sign = if e < 0 { -im.clone() } else { im.clone() };
                let mut base = Cyclo::rational(4, re.clone());
                base.add_root(1, &sign);
                let mut acc = Cyclo::rational(4, Q::one());
                for _ in 0..e.unsigned_abs() {
                    acc = &acc * &base;
                }
                acc
            }
        }
    }
}

impl Histogram {
    pub fn new(p: u32, denom_exp: u32, psi_order_exp: u32) -> Histogram {
        Histogram { p, denom_exp, psi_order_exp, bins: BTreeMap::new() }
    }

    pub fn add(&mut self, key: TorusReadout, phase: u64, weight: i128) {
        if weight == 0 {
            return;
        }
        let e = self.bins.entry((key, phase)).or_insert(0);
        *e += weight;
        if *e == 0 {
            self.bins.remove(&(key, phase));
        }
    }

    pub fn merge(&mut self, other: &Histogram) {
        assert_eq!((self.p, self.denom_exp, self.psi_order_exp), (other.p, other.denom_exp, other.psi_order_exp));
        for (&(k, ph), &w) in &other.bins {
            self.add(k, ph, w);
        }
    }

    /// f(readout) = t1^{v1}·μ2(a2)·t3^{v3}·q^{-(v1-v3)}.
    fn f_value(&self, r: &TorusReadout, t1: Complex64, t3: Complex64, mu2: &MultChar) -> Complex64 {
        let q = self.p as f64;
        let mu = mu2.eval(r.v2, r.a2_class).expect("readout class is a unit");
        t1.powi(r.v1 as i32) * t3.powi(r.v3 as i32) * q.powi(-(r.v1 - r.v3) as i32) * mu
    }

    pub fn evaluate(&self, t1: Complex64, t3: Complex64, mu2: &MultChar) -> Complex64 {
        let scale = (self.p as f64).powi(-(self.denom_exp as i32));
        let psi_n = pow_u64(self.p, self.psi_order_exp) as f64;
        let mut acc = KahanSum::default();
        for (&(r, phase), &w) in &self.bins {
            let psi = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase as f64 / psi_n);
            acc.add(self.f_value(&r, t1, t3, mu2) * psi * (w as f64 * scale));
        }
        acc.value()
    }

    /// Exact value in a cyclotomic field.
    pub fn evaluate_exact(&self, t1: &ExactParam, t3: &ExactParam, mu2: &MultChar) -> Cyclo {
        let psi_n = pow_u64(self.p, self.psi_order_exp) as u32;
        let n_mu = mu2.field_order();
        let order = num_integer::lcm(num_integer::lcm(psi_n, n_mu), 4);
        let mut acc = Cyclo::zero(order);
        let pq = Q::from_integer(self.p.into());
        for (&(r, phase), &w) in &self.bins {
            let mu_e = mu2.exponent(r.v2, r.a2_class).expect("unit class") * (order / n_mu) as i64;
            let psi_e = phase as i64 * (order / psi_n) as i64;
            let coeff = Q::from_integer(w.into()) * pq.pow(-(self.denom_exp as i32)) * pq.pow(-(r.v1 - r.v3) as i32);
            let mut root = Cyclo::zero(order);
            root.add_root(mu_e + psi_e, &coeff);
            let term = &(&root * &t1.pow(r.v1)) * &t3.pow(r.v3);
            acc += &term;
        }
        acc
    }

    pub fn is_empty(&self) -> bool {
        self.bins.values().all(|w| w.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat;

    #[test]
    fn kahan_recovers_small_terms() {
        let mut k = KahanSum::default();
        k.add(Complex64::new(1e16, 0.0));
        for _ in 0..1000 {
            k.add(Complex64::new(1.0, 1.0));
        }
        k.add(Complex64::new(-1e16, 0.0));
        assert_eq!(k.value(), Complex64::new(1000.0, 1000.0));
    }

    #[test]
    fn gaussian_powers_invert() {
        let t = ExactParam::unit_gaussian(rat(3, 5), rat(4, 5)).unwrap();
        assert_eq!((&t.pow(3) * &t.pow(-3)).as_rational(), Some(Q::one()));
        assert!((t.pow(2).to_complex() - t.to_complex().powi(2)).norm() < 1e-14);
        assert!(ExactParam::unit_gaussian(rat(1, 2), rat(1, 2)).is_none());
    }

    #[test]
    fn exact_and_float_evaluation_agree() {
        let mu2 = MultChar::new(5, 1, 1, (1, 3)).unwrap();
        let mut h = Histogram::new(5, 3, 1);
        h.add(TorusReadout { v1: 1, v2: -1, v3: 0, a2_class: 2 }, 3, 17);
        h.add(TorusReadout { v1: -2, v2: 2, v3: 1, a2_class: 4 }, 0, -40);
        let (t1, t3) = (ExactParam::Rational(rat(2, 3)), ExactParam::unit_gaussian(rat(-3, 5), rat(4, 5)).unwrap());
        let exact = h.evaluate_exact(&t1, &t3, &mu2).to_complex();
        let float = h.evaluate(t1.to_complex(), t3.to_complex(), &mu2);
        assert!((exact - float).norm() < 1e-13);
    }
}
