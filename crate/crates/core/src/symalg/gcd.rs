//! Multivariate polynomial gcd over Q by recursive primitive remainder sequences.
//! Inputs here are genuine polynomials (no negative exponents).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{LaurentPoly, Monomial, Symbol, Q};

/// Exact quotient of polynomials, `None` if `b` does not divide `a`.
pub fn poly_div_exact(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let (lbm, lbc) = b.leading()?;
    let (lbm, lbc) = (lbm.clone(), lbc.clone());
    let mut r = a.clone();
    let mut quot = LaurentPoly::zero();
    while let Some((lm, lc)) = r.leading() {
        if !lbm.divides(lm) {
            return None;
        }
        let m = lm.try_div(&lbm).ok()?;
        let c = lc / &lbc;
        let t = LaurentPoly::term(c.clone(), m.clone());
        r -= &b.try_mul_monomial(&m).ok()?.scale(&c);
        quot += &t;
    }
    Some(quot)
}

/// Scales so the lexicographically leading coefficient is 1.
pub fn monic(p: &LaurentPoly) -> LaurentPoly {
    match p.leading() {
        None => LaurentPoly::zero(),
        Some((_, c)) => {
            let inv = c.recip();
            p.scale(&inv)
        }
    }
}

fn strip_monomial(p: &LaurentPoly) -> (Monomial, LaurentPoly) {
    let m = p.monomial_content();
    let inv = m.try_pow(-1).expect("monomial content inverse");
    (m, p.try_mul_monomial(&inv).expect("monomial shift"))
}

type Uni = Vec<LaurentPoly>;

fn to_uni(p: &LaurentPoly, v: Symbol) -> Uni {
    let parts = p.collect_in(v);
    let deg = parts.keys().next_back().copied().unwrap_or(0).max(0) as usize;
    let mut out = vec![LaurentPoly::zero(); deg + 1];
    for (e, c) in parts {
        out[e as usize] = c;
    }
    out
}

fn from_uni(u: &Uni, v: Symbol) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (e, c) in u.iter().enumerate() {
        if !c.is_zero() {
            out += &c.try_mul_monomial(&Monomial::var(v, e as i32)).expect("small exponent");
        }
    }
    out
}

fn trim(u: &mut Uni) {
    while u.len() > 1 && u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

fn uni_is_zero(u: &Uni) -> bool {
    u.iter().all(|c| c.is_zero())
}

fn content(u: &Uni) -> LaurentPoly {
    let mut g = LaurentPoly::zero();
    for c in u {
        if c.is_zero() {
            continue;
        }
        g = poly_gcd(&g, c);
        if g.as_constant().is_some() {
            return LaurentPoly::one();
        }
    }
    g
}

/// Positive rational r such that every coefficient of u/r is an integer with overall gcd 1.
fn rational_content(u: &Uni) -> Q {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (_, c) in u.iter().flat_map(|p| p.terms()) {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    Q::new(num, den)
}

fn primitive(u: &Uni) -> Uni {
    let c = content(u);
    let u: Uni = if c.is_one() {
        u.clone()
    } else {
        u.iter().map(|x| poly_div_exact(x, &c).expect("content divides coefficients")).collect()
    };
    let r = rational_content(&u);
    if r.is_zero() || r.is_one() {
        return u;
    }
    let inv = r.recip();
    u.iter().map(|x| x.scale(&inv)).collect()
}

fn prem(a: &Uni, b: &Uni) -> Uni {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    trim(&mut r);
    while !uni_is_zero(&r) && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + dr - db] -= &(&lr * bc);
        }
        trim(&mut r);
        if r.len() - 1 == dr && !r[dr].is_zero() {
            unreachable!("pseudo-division failed to reduce degree");
        }
    }
    r
}

fn eval_others(p: &LaurentPoly, point: &[(Symbol, Q)]) -> Q {
    let mut acc = Q::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (s, e) in m.iter() {
            let x = &point.iter().find(|(t, _)| *t == s).expect("all symbols specialized").1;
            for _ in 0..e {
                t *= x;
            }
        }
        acc += t;
    }
    acc
}

fn qpoly_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lr = r.last().cloned().expect("nonempty");
        if !lr.is_zero() {
            let f = &lr / &b[db];
            let off = r.len() - 1 - db;
            for (i, bc) in b.iter().enumerate() {
                r[off + i] -= &f * bc;
            }
        }
        r.pop();
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    r
}

/// Specializes every other symbol at a fixed point; if the leading coefficients
/// survive and the univariate images are coprime, the primitive parts are too.
fn images_coprime(ua: &Uni, ub: &Uni, v: Symbol) -> bool {
    let mut others: Vec<Symbol> = ua.iter().chain(ub.iter()).flat_map(|p| p.symbols()).collect();
    others.sort();
    others.dedup();
    debug_assert!(!others.contains(&v));
    const PTS: [i64; 8] = [3, 5, 7, 11, 13, 17, 19, 23];
    let point: Vec<(Symbol, Q)> =
        others.iter().enumerate().map(|(i, &s)| (s, Q::from_integer(PTS[i % PTS.len()].into()))).collect();
    let img = |u: &Uni| -> Vec<Q> { u.iter().map(|p| eval_others(p, &point)).collect() };
    let (mut a, mut b) = (img(ua), img(ub));
    if a.last().is_none_or(|c| c.is_zero()) || b.last().is_none_or(|c| c.is_zero()) {
        return false;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while b.len() > 1 {
        let r = qpoly_rem(&a, &b);
        if r.is_empty() {
            return false;
        }
        a = b;
        b = r;
    }
    b.len() == 1
}

/// gcd of two polynomials, normalized monic in lex order; gcd(0,0) = 0.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return LaurentPoly::one();
    }
    let (ma, a) = strip_monomial(a);
    let (mb, b) = strip_monomial(b);
    let mono = LaurentPoly::term(Q::one(), ma.gcd(&mb));
    let mut syms = a.symbols();
    syms.extend(b.symbols());
    syms.sort();
    syms.dedup();
    let Some(&v) = syms.first() else {
        return mono;
    };
    let ua = to_uni(&a, v);
    let ub = to_uni(&b, v);
    let c = poly_gcd(&content(&ua), &content(&ub));
    if images_coprime(&ua, &ub, v) {
        return monic(&(c * mono));
    }
    let (mut x, mut y) = (primitive(&ua), primitive(&ub));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    let g = loop {
        if uni_is_zero(&y) {
            break primitive(&x);
        }
        if y.len() == 1 {
            break vec![LaurentPoly::one()];
        }
        let r = prem(&x, &y);
        x = y;
        y = if uni_is_zero(&r) { vec![LaurentPoly::zero()] } else { primitive(&r) };
    };
    monic(&(from_uni(&g, v) * c * mono))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> LaurentPoly {
        LaurentPoly::var(n)
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let (x, t, q) = (v("X"), v("t1"), v("q"));
        let f = LaurentPoly::one() - &t * &q * &x;
        let g1 = &f * (&x + &t);
        let g2 = &f * (&q - LaurentPoly::int(2)) * &x;
        assert_eq!(poly_gcd(&g1, &g2), monic(&f));
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let (x, u) = (v("X"), v("u"));
        let a = LaurentPoly::one() - &u * &x;
        let b = LaurentPoly::one() + &u * &x;
        assert!(poly_gcd(&a, &b).is_one());
    }

    #[test]
    fn gcd_keeps_monomial_part() {
        let (x, u) = (v("X"), v("u"));
        let a = &x * &x * &u;
        let b = &x * (&u + LaurentPoly::one());
        assert_eq!(poly_gcd(&a, &b), x);
    }
}
