//! Numerical oracle for the truncated Whittaker integral
//!
//! I^k(m, n) = ∫_{p^{-k}} ∫_{p^{-k}} ∫_{p^{-2k}} f(w·u(ϖ^{-m}x, ϖ^{-n}y, ϖ^{-m-n}z)) ψ⁻¹(x + y) dz dy dx,
//!
//! computed without using any closed form. Values of f are accumulated as exact
//! measure histograms over torus readouts, so the result can be evaluated at any
//! (t1, t3, μ2) either in floating point or exactly in a cyclotomic field.
//!
//! Two routes are provided: [`integrate`] reduces the integral by the exact
//! invariances of f and certifies each z-cell by p-adic ball arithmetic;
//! [`integrate_grid`] sums f over a literal coset grid and is only feasible for
//! tiny jobs. They share nothing beyond the integrand.

mod decomposed;
mod grid;
mod histogram;
mod integrand;
mod suite;

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use crate::cyclo::Cyclo;
use crate::padic::{max_precision, MultChar, PadicError};
use crate::symalg::{LaurentPoly, Symbol};

pub use decomposed::Part;
pub use grid::{grid_cells, integrate_grid};
pub use histogram::{ExactParam, Histogram, KahanSum};
pub use integrand::{f_ball, f_exact, f_point};
pub use suite::{concordance_checks, mu2_choices, t_choices, ConcordanceConfig};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum OracleError {
    #[error("invalid job: {0}")]
    InvalidJob(String),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("refinement did not stabilize: difference {difference:e} exceeds tolerance {tol:e}")]
    RefinementFailure { difference: f64, tol: f64 },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

#[derive(Clone, Debug)]
pub struct OracleJob {
    pub p: u32,
    pub c: u32,
    pub m: i64,
    pub n: i64,
    /// Truncation: x, y ∈ p^{-k}, z ∈ p^{-2k}.
    pub k: i64,
    pub t1: Complex64,
    pub t3: Complex64,
    pub mu2: MultChar,
    /// Relative p-adic precision; defaults to c + k + m + n + 4.
    pub rel: Option<u32>,
    /// Relative tolerance for the refinement check.
    pub tol: f64,
    pub execution: Execution,
}

impl OracleJob {
    /// A job with k = max(m, n) + 2, t1 = t3 = 1 and tolerance 1e-8.
    pub fn new(mu2: MultChar, m: i64, n: i64) -> OracleJob {
        OracleJob {
            p: mu2.p,
            c: mu2.c,
            m,
            n,
            k: m.max(n) + 2,
            t1: Complex64::new(1.0, 0.0),
            t3: Complex64::new(1.0, 0.0),
            mu2,
            rel: None,
            tol: 1e-8,
            execution: Execution::default(),
        }
    }

    pub fn with_k(mut self, k: i64) -> Self {
        self.k = k;
        self
    }

    pub fn with_t(mut self, t1: Complex64, t3: Complex64) -> Self {
        self.t1 = t1;
        self.t3 = t3;
        self
    }

    pub fn with_execution(mut self, e: Execution) -> Self {
        self.execution = e;
        self
    }

    pub fn rel(&self) -> u32 {
        self.rel.unwrap_or((self.c as i64 + self.k + self.m + self.n + 4) as u32)
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        let bad = |s: String| Err(OracleError::InvalidJob(s));
        if !is_prime(self.p) {
            return bad(format!("p = {} is not prime", self.p));
        }
        if self.c == 0 {
            return bad("conductor must be at least 1".into());
        }
        if (self.mu2.p, self.mu2.c) != (self.p, self.c) {
            return bad("μ2 has a different prime or conductor".into());
        }
        if self.m < 0 || self.n < 0 {
            return bad("m and n must be nonnegative".into());
        }
        if self.k < 1 || self.k > 12 {
            return bad(format!("k = {} outside 1..=12", self.k));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return bad("tolerance must be positive".into());
        }
        let rel = self.rel();
        if rel == 0 || rel + 1 > max_precision(self.p) {
            return bad(format!("precision {rel} unsupported for p = {}", self.p));
        }
        if !(self.t1.norm() > 0.0 && self.t3.norm() > 0.0 && self.t1.is_finite() && self.t3.is_finite()) {
            return bad("t1 and t3 must be finite and nonzero".into());
        }
        Ok(())
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        ComplexValue { re: z.re, im: z.im }
    }
}

impl From<ComplexValue> for Complex64 {
    fn from(z: ComplexValue) -> Self {
        Complex64::new(z.re, z.im)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub total: ComplexValue,
    /// I1..I8 of the case split; I1 = I3 + I4, I4 = I5 + I6, I2 = I7 + I8.
    pub parts: BTreeMap<String, ComplexValue>,
    pub error_estimate: f64,
    pub cells: u64,
    pub wall_time: f64,
}

/// A finished integration: the report plus the exact histograms behind it.
#[derive(Clone, Debug)]
pub struct OracleRun {
    pub result: OracleResult,
    pub histograms: Vec<(Part, Histogram)>,
}

impl OracleRun {
    pub fn histogram(&self, part: Part) -> &Histogram {
        &self.histograms.iter().find(|(p, _)| *p == part).expect("every part is present").1
    }

    pub fn total_histogram(&self) -> Histogram {
        let mut it = self.histograms.iter();
        let mut h = it.next().expect("nonempty").1.clone();
        for (_, o) in it {
            h.merge(o);
        }
        h
    }

    pub fn part(&self, label: &str) -> Complex64 {
        self.result.parts[label].into()
    }
}

fn summarize(job: &OracleJob, hs: &[(Part, Histogram)]) -> (Complex64, BTreeMap<String, ComplexValue>) {
    let val = |p: Part| hs.iter().find(|(q, _)| *q == p).unwrap().1.evaluate(job.t1, job.t3, &job.mu2);
    let (i3, i5, i6, i7, i8) = (val(Part::I3), val(Part::I5), val(Part::I6), val(Part::I7), val(Part::I8));
    let i4 = i5 + i6;
    let (i1, i2) = (i3 + i4, i7 + i8);
    let mut parts = BTreeMap::new();
    for (label, v) in [("I1", i1), ("I2", i2), ("I3", i3), ("I4", i4), ("I5", i5), ("I6", i6), ("I7", i7), ("I8", i8)]
    {
        parts.insert(label.to_string(), v.into());
    }
    (i1 + i2, parts)
}

/// Integrates by the invariance reduction, then repeats with one extra level of
/// initial subdivision and one extra digit of precision as a refinement check.
pub fn integrate(job: &OracleJob) -> Result<OracleRun, OracleError> {
    job.validate()?;
    let start = Instant::now();
    let parallel = job.execution == Execution::Parallel;
    let first = decomposed::run_plan(job, 1, job.rel(), parallel)?;
    let second = decomposed::run_plan(job, 2, job.rel() + 1, parallel)?;
    let (total, parts) = summarize(job, &first.parts);
    let (check, _) = summarize(job, &second.parts);
    let difference = (total - check).norm();
    if difference > job.tol * total.norm().max(1.0) {
        return Err(OracleError::RefinementFailure { difference, tol: job.tol });
    }
    let result = OracleResult {
        total: total.into(),
        parts,
        error_estimate: difference,
        cells: first.cells,
        wall_time: start.elapsed().as_secs_f64(),
    };
    Ok(OracleRun { result, histograms: first.parts })
}

#[cfg(feature = "parallel")]
pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Evaluates a Laurent polynomial exactly, each symbol bound to an [`ExactParam`].
pub fn eval_cyclo(poly: &LaurentPoly, values: &[(&str, ExactParam)]) -> Option<Cyclo> {
    let mut acc = Cyclo::zero(4);
    for (mono, coeff) in poly.terms() {
        let mut term = Cyclo::rational(4, coeff.clone());
        for (s, e) in mono.iter() {
            let (_, v) = values.iter().find(|(name, _)| Symbol::new(name) == s)?;
            term = &term * &v.pow(e as i64);
        }
        acc += &term;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat;
    use crate::whittaker::{closed_form_i, QParam, WhittakerSpec};

    fn job(p: u32, c: u32, index: u64, m: i64, n: i64) -> OracleJob {
        OracleJob::new(MultChar::new(p, c, index, (0, 1)).unwrap(), m, n)
    }

    #[test]
    fn value_at_identity_is_two_ninths() {
        let run = integrate(&job(3, 1, 1, 0, 0)).unwrap();
        let one = ExactParam::Rational(rat(1, 1));
        let exact = run.total_histogram().evaluate_exact(&one, &one, &run_mu(3, 1));
        assert_eq!(exact.as_rational(), Some(rat(2, 9)));
    }

    fn run_mu(p: u32, c: u32) -> MultChar {
        MultChar::new(p, c, 1, (0, 1)).unwrap()
    }

    #[test]
    fn matches_closed_form_exactly() {
        let spec = WhittakerSpec::new(QParam::Prime(3), 1, false).unwrap();
        let (t1, t3) = (ExactParam::Rational(rat(2, 1)), ExactParam::unit_gaussian(rat(3, 5), rat(4, 5)).unwrap());
        for (m, n) in [(0, 0), (1, 0), (0, 1)] {
            let run = integrate(&job(3, 1, 1, m, n)).unwrap();
            let got = run.total_histogram().evaluate_exact(&t1, &t3, &run_mu(3, 1));
            let want = eval_cyclo(&closed_form_i(&spec, m, n), &[("t1", t1.clone()), ("t3", t3.clone())]).unwrap();
            assert_eq!(got, want, "m={m} n={n}");
        }
    }

    #[test]
    fn validation_rejects_bad_jobs() {
        let mut j = job(3, 1, 1, 0, 0);
        j.m = -1;
        assert!(matches!(integrate(&j), Err(OracleError::InvalidJob(_))));
        let mut j = job(3, 1, 1, 0, 0);
        j.k = 0;
        assert!(j.validate().is_err());
        let mut j = job(3, 1, 1, 0, 0);
        j.tol = 0.0;
        assert!(j.validate().is_err());
        assert!(!is_prime(9) && is_prime(5));
    }

    #[test]
    fn gaussian_evaluation_of_polynomials() {
        let t = ExactParam::unit_gaussian(rat(3, 5), rat(4, 5)).unwrap();
        let poly = crate::symalg::var("t1").pow(2) + LaurentPoly::int(3);
        let v = eval_cyclo(&poly, &[("t1", t.clone())]).unwrap().to_complex();
        let z = t.to_complex();
        assert!((v - (z * z + 3.0)).norm() < 1e-14);
        assert!(eval_cyclo(&poly, &[]).is_none());
    }
}
