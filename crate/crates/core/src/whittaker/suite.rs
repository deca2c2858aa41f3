use std::time::Instant;

use crate::padic::{char_sum_additive, char_sum_additive_closed, char_sum_mult, char_sum_mult_closed, AdditiveChar, MultChar};
use crate::report::Check;

use super::*;

/// I1 + I2 against the closed form for 0 ≤ m, n ≤ m_max, plus the rescaling to W.
pub fn identity_checks(c: u32, m_max: i64) -> Vec<Check> {
    let spec = WhittakerSpec::symbolic(c);
    let mut out = Vec::new();
    for m in 0..=m_max {
        for n in 0..=m_max {
            let start = Instant::now();
            let lhs = assemble_i1(&spec, m, n) + assemble_i2(&spec, m, n);
            let rhs = closed_form_i(&spec, m, n);
            out.push(Check::exact(
                &format!("whittaker.c{c}.m{m}.n{n}"),
                "I1 + I2 = q^{-2m-2n}(1−(qX)^{m+n+1})/(1−qX)·W_f(1)",
                &lhs,
                &rhs,
                start,
            ));
        }
    }
    let start = Instant::now();
    let ok = (0..=m_max).all(|m| {
        (0..=m_max).all(|n| w_from_integral(&spec, m, n, &closed_form_i(&spec, m, n)) == closed_form_w(&spec, m, n))
    });
    out.push(Check::holds(
        &format!("whittaker.c{c}.w-from-integral"),
        "W_f(diag(ϖ^m,1,ϖ^{-n})) = q^{m+n}t1^{-n}t3^m·I(m,n)",
        ok,
        "rescaled I(m,n)".into(),
        "closed-form W".into(),
        start,
    ));
    out
}

/// Finite additive and multiplicative character sums against their closed forms,
/// in exact cyclotomic arithmetic, for |k|, |i| ≤ 4.
pub fn character_sum_checks(primes: &[u32], conductors: &[u32]) -> Vec<Check> {
    let mut out = Vec::new();
    for &p in primes {
        let start = Instant::now();
        let psi = AdditiveChar::unramified(p);
        let bad: Vec<i64> = (-4..=4).filter(|&k| char_sum_additive(k, &psi).as_rational() != Some(char_sum_additive_closed(k, p))).collect();
        out.push(Check::holds(
            &format!("sums.additive.p{p}"),
            "∫_{p^k − p^{k+1}} ψ⁻¹(x) dx closed form",
            bad.is_empty(),
            format!("cyclotomic sums for |k| ≤ 4, mismatches at {bad:?}"),
            "closed form".into(),
            start,
        ));
        for &c in conductors {
            let start = Instant::now();
            let chars = MultChar::all_primitive(p, c);
            if chars.is_empty() {
                continue;
            }
            let mut bad = Vec::new();
            for base in &chars {
                for varpi in [(0, 1), (1, 3)] {
                    let Ok(chi) = MultChar::new(p, c, base.index, varpi) else { continue };
                    for i in -4..=4 {
                        let ok = char_sum_mult(i, &chi).ok().and_then(|v| v.as_rational()) == Some(char_sum_mult_closed(i, p, c));
                        if !ok {
                            bad.push((chi.index, i));
                        }
                    }
                }
            }
            out.push(Check::holds(
                &format!("sums.multiplicative.p{p}.c{c}"),
                "∫_{o^×} μ2(1 + ϖ^i x) dx closed form",
                bad.is_empty(),
                format!("{} characters, |i| ≤ 4, mismatches at {bad:?}", chars.len()),
                "closed form".into(),
                start,
            ));
        }
    }
    out
}
