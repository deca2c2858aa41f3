//! The finite sums for the pieces of I^k(m, n), written term by term with the
//! original index ranges. Sums with an upper limit below the lower are empty.

use super::WhittakerSpec;
use crate::symalg::LaurentPoly;

fn sum(lo: i64, hi: i64, f: impl Fn(i64) -> LaurentPoly) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for i in lo..=hi {
        acc += &f(i);
    }
    acc
}

struct Terms {
    q: LaurentPoly,
    x: LaurentPoly,
    c: i64,
    /// 1 − q⁻¹.
    a: LaurentPoly,
    /// q^{-2m-2n}.
    p: LaurentPoly,
}

impl Terms {
    fn new(spec: &WhittakerSpec, m: i64, n: i64) -> Terms {
        Terms {
            q: spec.q(),
            x: spec.x(),
            c: spec.c as i64,
            a: LaurentPoly::one() - spec.q_pow(-1),
            p: spec.q_pow(-2 * m - 2 * n),
        }
    }

    fn q(&self, e: i64) -> LaurentPoly {
        self.q.pow(e as i32)
    }

    /// X^{c+i}.
    fn xc(&self, i: i64) -> LaurentPoly {
        self.x.pow((self.c + i) as i32)
    }
}

/// I1(m, n) = q^{-2m-2n}X^c + q^{-2m-2n}(1 − q⁻¹)Σ_{i=1}^m X^{c+i}q^i.
pub fn assemble_i1(spec: &WhittakerSpec, m: i64, n: i64) -> LaurentPoly {
    let t = Terms::new(spec, m, n);
    &t.p * t.xc(0) + &t.p * &t.a * sum(1, m, |i| t.xc(i) * t.q(i))
}

/// I2(m, n), the six-line stable expression.
pub fn assemble_i2(spec: &WhittakerSpec, m: i64, n: i64) -> LaurentPoly {
    let t = Terms::new(spec, m, n);
    let (a, p) = (&t.a, &t.p);
    let qinv = t.q(-1);
    let mut out = p * a * sum(1, n, |i| t.xc(i) * (t.q(i) - LaurentPoly::one()));
    out += &(p * a * sum(1, n, |i| t.xc(i)));
    out -= &(p * a * a * sum(1, m, |i| {
        sum(1, n, |j| t.q(i + j) * (sum(1, i + j - 1, |l| a * t.xc(l)) + &qinv * t.xc(i + j - 1)))
    }));
    out -= &(p * a * sum(1, m, |i| t.q(i + n) * (-sum(1, i + n, |l| a * t.xc(l)) - &qinv * t.xc(i + n))));
    out -= &(p * a * sum(1, n, |i| t.q(i + m) * (-sum(1, i + m, |l| a * t.xc(l)) - &qinv * t.xc(i + m))));
    out += &(t.q(-m - n) * (-sum(1, m + n + 1, |l| a * t.xc(l)) - &qinv * t.xc(m + n + 1)));
    out
}

/// I3^k: the x ∈ p^m, y ∈ p^n part at truncation k.
pub fn assemble_i3_k(spec: &WhittakerSpec, m: i64, n: i64, k: i64) -> LaurentPoly {
    let t = Terms::new(spec, m, n);
    let top = 2 * k + m + n - t.c;
    &t.p * (t.xc(0) + &t.a * sum(1, top, |i| t.xc(i)))
}

/// I4^k = I6^k: x ∉ p^m, y ∈ p^n.
pub fn assemble_i4_k(spec: &WhittakerSpec, m: i64, n: i64, k: i64) -> LaurentPoly {
    let t = Terms::new(spec, m, n);
    let top = 2 * k + m + n - t.c;
    let pa = &t.p * &t.a;
    &pa * sum(1, m, |i| t.xc(i) * (t.q(i) - LaurentPoly::one())) - &pa * sum(m + 1, top, |i| t.xc(i))
}

/// I7^k: x ∈ p^m, y ∉ p^n.
pub fn assemble_i7_k(spec: &WhittakerSpec, m: i64, n: i64, k: i64) -> LaurentPoly {
    let t = Terms::new(spec, m, n);
    let top = 2 * k + m + n - t.c;
    let pa = &t.p * &t.a;
    &pa * sum(1, n, |i| t.xc(i) * (t.q(i) - LaurentPoly::one())) - &pa * sum(n + 1, top, |i| t.xc(i))
}

/// I8^k: x ∉ p^m, y ∉ p^n, as the four (i, j) blocks. The third block sums
/// over j; its summand is written in j.
pub fn assemble_i8_k(spec: &WhittakerSpec, m: i64, n: i64, k: i64) -> LaurentPoly {
    let t = Terms::new(spec, m, n);
    let top = 2 * k + m + n - t.c;
    let (a, p) = (&t.a, &t.p);
    let qinv = t.q(-1);
    let tail = |from: i64| sum(from, top, |l| a * t.xc(l));
    let mut out = p * a * a * sum(1, m, |i| sum(1, n, |j| t.q(i + j) * (tail(i + j) - &qinv * t.xc(i + j - 1))));
    out -= &(p * a * sum(1, m, |i| t.q(i + n) * (tail(i + n + 1) - &qinv * t.xc(i + n))));
    out -= &(p * a * sum(1, n, |j| t.q(j + m) * (tail(j + m + 1) - &qinv * t.xc(j + m))));
    out += &(t.q(-m - n) * (tail(m + n + 2) - &qinv * t.xc(m + n + 1)));
    out
}

/// Coefficient multiplying the k-dependent tail in I7^k + I8^k; vanishes identically.
pub fn i2_k_coefficient(spec: &WhittakerSpec, m: i64, n: i64) -> LaurentPoly {
    let t = Terms::new(spec, m, n);
    let a = &t.a;
    let inner = a * a * sum(1, m, |i| sum(1, n, |j| t.q(i + j)))
        - a * sum(1, m, |i| t.q(i + n))
        - a * sum(1, n, |j| t.q(j + m))
        + t.q(m + n)
        - LaurentPoly::one();
    &t.p * a * inner
}

#[cfg(test)]
mod tests {
    use super::super::{closed_form_i, QParam};
    use super::*;

    #[test]
    fn empty_sums_at_origin() {
        let spec = WhittakerSpec::symbolic(3);
        assert_eq!(assemble_i1(&spec, 0, 0), spec.x().pow(3));
    }

    #[test]
    fn stable_pieces_sum_to_closed_form() {
        for c in 1..=2 {
            let spec = WhittakerSpec::symbolic(c);
            for m in 0..=3 {
                for n in 0..=3 {
                    let total = assemble_i1(&spec, m, n) + assemble_i2(&spec, m, n);
                    assert_eq!(total, closed_form_i(&spec, m, n), "c={c} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn truncated_pieces_reassemble() {
        let spec = WhittakerSpec::new(QParam::Prime(5), 2, false).unwrap();
        for (m, n) in [(0, 0), (1, 2), (2, 1), (2, 2)] {
            for k in [m.max(n) + 2, m.max(n) + 3] {
                let i1 = assemble_i3_k(&spec, m, n, k) + assemble_i4_k(&spec, m, n, k);
                let i2 = assemble_i7_k(&spec, m, n, k) + assemble_i8_k(&spec, m, n, k);
                assert_eq!(i1, assemble_i1(&spec, m, n));
                assert_eq!(i2, assemble_i2(&spec, m, n));
            }
        }
    }

    #[test]
    fn k_coefficient_vanishes() {
        let spec = WhittakerSpec::symbolic(1);
        for m in 0..=4 {
            for n in 0..=4 {
                assert!(i2_k_coefficient(&spec, m, n).is_zero());
            }
        }
    }
}
