use adjoint_local::oracle::{eval_cyclo, integrate, integrate_grid, ExactParam, Execution, OracleJob, Part};
use adjoint_local::padic::MultChar;
use adjoint_local::symalg::{eval_float, rat, Assignment};
use adjoint_local::whittaker::{assemble_i3_k, assemble_i4_k, assemble_i7_k, assemble_i8_k, closed_form_i, QParam, WhittakerSpec};
use num_complex::Complex64;

/// Two characters per (p, c): distinct on units when possible, otherwise distinct at ϖ.
fn characters(p: u32, c: u32) -> Vec<MultChar> {
    let prim = MultChar::all_primitive(p, c);
    if prim.len() >= 2 {
        vec![MultChar::new(p, c, prim[0].index, (0, 1)).unwrap(), MultChar::new(p, c, prim[1].index, (1, 3)).unwrap()]
    } else {
        vec![MultChar::new(p, c, prim[0].index, (0, 1)).unwrap(), MultChar::new(p, c, prim[0].index, (1, 3)).unwrap()]
    }
}

fn t_choices() -> [(Complex64, Complex64); 2] {
    [(Complex64::new(0.6, 0.8), Complex64::new(1.0, 0.0)), (Complex64::new(1.3, 0.2), Complex64::new(0.6, -0.1))]
}

fn closed(p: u32, c: u32, m: i64, n: i64, t1: Complex64, t3: Complex64) -> Complex64 {
    let spec = WhittakerSpec::new(QParam::Prime(p), c, false).unwrap();
    eval_float(&closed_form_i(&spec, m, n), &Assignment::new().with("t1", t1).with("t3", t3)).unwrap().0
}

#[test]
fn concordance_with_closed_form() {
    for (p, c) in [(3, 1), (3, 2), (5, 1), (5, 2)] {
        for mu2 in characters(p, c) {
            for (t1, t3) in t_choices() {
                for m in 0..=2 {
                    for n in 0..=2 {
                        let job = OracleJob::new(mu2.clone(), m, n).with_t(t1, t3);
                        let run = integrate(&job).unwrap();
                        let want = closed(p, c, m, n, t1, t3);
                        let got: Complex64 = run.result.total.into();
                        let rel = (got - want).norm() / want.norm();
                        assert!(rel < 1e-8, "p={p} c={c} m={m} n={n}: {got} vs {want}");
                        assert!(run.result.error_estimate < 1e-12);
                    }
                }
            }
        }
    }
}

#[test]
fn parts_match_assembled_sums() {
    // Only the k-dependent sums for I3 and I4, I7 + I8 are compared as wholes.
    let spec = WhittakerSpec::new(QParam::Prime(3), 1, false).unwrap();
    let (t1, t3) = (ExactParam::Rational(rat(2, 1)), ExactParam::Rational(rat(1, 3)));
    let vals = [("t1", t1.clone()), ("t3", t3.clone())];
    let mu2 = MultChar::new(3, 1, 1, (0, 1)).unwrap();
    for m in 0..=2 {
        for n in 0..=2 {
            let job = OracleJob::new(mu2.clone(), m, n);
            let k = job.k;
            let run = integrate(&job).unwrap();
            let part = |p: Part| run.histogram(p).evaluate_exact(&t1, &t3, &mu2);
            assert!(part(Part::I5).is_zero(), "I5 m={m} n={n}");
            assert_eq!(part(Part::I3), eval_cyclo(&assemble_i3_k(&spec, m, n, k), &vals).unwrap());
            assert_eq!(&part(Part::I5) + &part(Part::I6), eval_cyclo(&assemble_i4_k(&spec, m, n, k), &vals).unwrap());
            let i2 = eval_cyclo(&(assemble_i7_k(&spec, m, n, k) + assemble_i8_k(&spec, m, n, k)), &vals).unwrap();
            assert_eq!(&part(Part::I7) + &part(Part::I8), i2, "m={m} n={n}");
        }
    }
}

#[test]
fn independent_of_truncation() {
    let mu2 = MultChar::new(5, 2, 1, (1, 4)).unwrap();
    let t = ExactParam::unit_gaussian(rat(3, 5), rat(-4, 5)).unwrap();
    let s = ExactParam::Rational(rat(3, 2));
    for (m, n) in [(0, 0), (2, 1)] {
        let base = OracleJob::new(mu2.clone(), m, n);
        let k0 = base.k;
        let a = integrate(&base).unwrap().total_histogram().evaluate_exact(&t, &s, &mu2);
        let b = integrate(&base.with_k(k0 + 1)).unwrap().total_histogram().evaluate_exact(&t, &s, &mu2);
        assert_eq!(a, b);
    }
}

#[test]
fn grid_route_agrees_exactly() {
    let cases = [(3, 1, 0, 0, 1), (3, 1, 1, 0, 1), (3, 1, 0, 1, 1), (5, 1, 0, 0, 1), (3, 2, 0, 0, 1), (3, 1, 0, 0, 2)];
    let t1 = ExactParam::unit_gaussian(rat(3, 5), rat(4, 5)).unwrap();
    let t3 = ExactParam::Rational(rat(2, 3));
    for (p, c, m, n, k) in cases {
        for mu2 in characters(p, c) {
            let job = OracleJob::new(mu2.clone(), m, n).with_k(k);
            let grid = integrate_grid(&job, 1 << 22).unwrap().evaluate_exact(&t1, &t3, &mu2);
            let fast = integrate(&job).unwrap().total_histogram().evaluate_exact(&t1, &t3, &mu2);
            assert_eq!(grid, fast, "p={p} c={c} m={m} n={n} k={k}");
        }
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let mu2 = MultChar::new(5, 1, 2, (0, 1)).unwrap();
    let job = OracleJob::new(mu2, 2, 1);
    let a = integrate(&job.clone().with_execution(Execution::Sequential)).unwrap();
    let b = integrate(&job.with_execution(Execution::Parallel)).unwrap();
    assert_eq!(a.histograms, b.histograms);
    assert_eq!(a.result.cells, b.result.cells);
}

#[test]
fn linear_in_the_integrand() {
    // Scaling t1 and t3 by a common unit scales each readout's value by s^{v1+v3}.
    let mu2 = MultChar::new(3, 1, 1, (0, 1)).unwrap();
    let run = integrate(&OracleJob::new(mu2.clone(), 1, 1)).unwrap();
    let h = run.total_histogram();
    let (t1, t3) = (Complex64::new(0.9, 0.3), Complex64::new(1.1, -0.2));
    let total = h.evaluate(t1, t3, &mu2);
    let by_bins: Complex64 = h
        .bins
        .iter()
        .map(|(&(r, ph), &w)| {
            let mut one = adjoint_local::oracle::Histogram::new(h.p, h.denom_exp, h.psi_order_exp);
            one.add(r, ph, w);
            one.evaluate(t1, t3, &mu2)
        })
        .sum();
    assert!((total - by_bins).norm() < 1e-12);
}
