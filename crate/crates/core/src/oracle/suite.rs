use std::time::Instant;

use num_complex::Complex64;

use crate::padic::MultChar;
use crate::report::Check;
use crate::symalg::{eval_float, Assignment, LaurentPoly};
use crate::whittaker::{assemble_i3_k, closed_form_i, QParam, WhittakerSpec};

use super::{integrate, Execution, OracleJob, Part};

/// Which jobs to run and how to compare them.
#[derive(Clone, Debug)]
pub struct ConcordanceConfig {
    pub p: u32,
    pub c: u32,
    pub pairs: Vec<(i64, i64)>,
    /// Fixed truncation; `None` means max(m, n) + 2 per job.
    pub k: Option<i64>,
    pub tol: f64,
    pub execution: Execution,
}

impl ConcordanceConfig {
    /// (m, n) ∈ {0, 1, 2}² at the default truncation.
    pub fn standard(p: u32, c: u32) -> ConcordanceConfig {
        let pairs = (0..=2).flat_map(|m| (0..=2).map(move |n| (m, n))).collect();
        ConcordanceConfig { p, c, pairs, k: None, tol: 1e-8, execution: Execution::default() }
    }
}

/// Two characters of conductor c: distinct on units when possible, otherwise
/// distinct at ϖ.
pub fn mu2_choices(p: u32, c: u32) -> Vec<MultChar> {
    let prim = MultChar::all_primitive(p, c);
    let Some(first) = prim.first() else {
        return Vec::new();
    };
    let second = prim.get(1).map_or((first.index, (1, 3)), |m| (m.index, (1, 3)));
    let a = MultChar::new(p, c, first.index, (0, 1)).expect("primitive index");
    let b = MultChar::new(p, c, second.0, second.1).expect("primitive index");
    vec![a, b]
}

/// A unitary and a non-unitary choice of (t1, t3).
pub fn t_choices() -> [(Complex64, Complex64); 2] {
    [(Complex64::new(0.6, 0.8), Complex64::new(1.0, 0.0)), (Complex64::new(1.3, 0.2), Complex64::new(0.6, -0.1))]
}

fn eval_at(poly: &LaurentPoly, t1: Complex64, t3: Complex64) -> Option<Complex64> {
    eval_float(poly, &Assignment::new().with("t1", t1).with("t3", t3)).ok().map(|(v, _)| v)
}

fn rel(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(1e-300)
}

fn fmt(z: Complex64) -> String {
    format!("{:.15e}{:+.15e}i", z.re, z.im)
}

/// Oracle against the closed form for every job, plus the decomposed checks:
/// I5 vanishes and I3 equals its assembled finite sum.
pub fn concordance_checks(cfg: &ConcordanceConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let spec = WhittakerSpec::new(QParam::Prime(cfg.p), cfg.c, false).expect("c ≥ 1");
    let chars = mu2_choices(cfg.p, cfg.c);
    let tag = format!("oracle.p{}.c{}", cfg.p, cfg.c);
    if chars.is_empty() {
        let start = Instant::now();
        out.push(Check::holds(&tag, "conductor-c characters exist", false, "no primitive μ2".into(), String::new(), start));
        return out;
    }
    for &(m, n) in &cfg.pairs {
        let start = Instant::now();
        let mut job = OracleJob::new(chars[0].clone(), m, n).with_execution(cfg.execution).with_t(t_choices()[0].0, t_choices()[0].1);
        if let Some(k) = cfg.k {
            job = job.with_k(k);
        }
        job.tol = cfg.tol;
        let id = format!("{tag}.m{m}.n{n}.k{}", job.k);
        let run = match integrate(&job) {
            Ok(r) => r,
            Err(e) => {
                out.push(Check::holds(&id, "oracle run", false, e.to_string(), String::new(), start));
                continue;
            }
        };
        let total = run.total_histogram();
        let want_poly = closed_form_i(&spec, m, n);
        for (ci, mu2) in chars.iter().enumerate() {
            for (ti, &(t1, t3)) in t_choices().iter().enumerate() {
                let got = total.evaluate(t1, t3, mu2);
                let (lhs, delta, rhs) = match eval_at(&want_poly, t1, t3) {
                    Some(want) => (fmt(got), rel(got, want), fmt(want)),
                    None => (fmt(got), f64::INFINITY, "closed form not evaluable".into()),
                };
                out.push(Check::within(
                    &format!("{id}.mu{ci}.t{ti}"),
                    "oracle I^k(m,n) = q^{-2m-2n}(1−(qX)^{m+n+1})/(1−qX)·W_f(1)",
                    lhs,
                    rhs,
                    delta,
                    cfg.tol,
                    start,
                ));
            }
        }
        let (t1, t3) = t_choices()[0];
        let i5 = run.histogram(Part::I5).evaluate(t1, t3, &chars[0]);
        out.push(Check::within(&format!("{id}.i5-vanishes"), "I5^k = 0", fmt(i5), "0".into(), i5.norm(), 1e-10, start));
        let i3 = run.histogram(Part::I3).evaluate(t1, t3, &chars[0]);
        let (rhs, delta) = match eval_at(&assemble_i3_k(&spec, m, n, job.k), t1, t3) {
            Some(w) => (fmt(w), (i3 - w).norm() / w.norm().max(1.0)),
            None => ("assembled sum not evaluable".into(), f64::INFINITY),
        };
        out.push(Check::within(&format!("{id}.i3-assembled"), "I3^k as a finite sum over x ∈ p^m, y ∈ p^n", fmt(i3), rhs, delta, 1e-8, start));
        out.push(Check::within(
            &format!("{id}.refinement"),
            "rerun with finer cells and one more digit",
            format!("{:e}", run.result.error_estimate),
            format!("< {:e}", cfg.tol),
            run.result.error_estimate,
            cfg.tol,
            start,
        ));
    }
    out
}
