use adjoint_local::symalg::{geometric_sum, rat, Assignment, LaurentPoly, Monomial, RatFunc, Symbol};
use proptest::prelude::*;

const SYMS: [&str; 3] = ["X", "q", "t1"];

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-3i64..=3, 1i64..=3), prop::array::uniform3(-2i32..=2)), 0..4).prop_map(|ts| {
        LaurentPoly::from_terms(ts.into_iter().map(|((n, d), es)| {
            let pairs: Vec<_> = SYMS.iter().zip(es).map(|(s, e)| (Symbol::new(s), e)).collect();
            (Monomial::from_pairs(&pairs).unwrap(), rat(n, d))
        }))
    })
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

fn point() -> impl Strategy<Value = Assignment> {
    prop::array::uniform3(prop_oneof![(1i64..=7, 1i64..=5), (-7i64..=-1, 1i64..=5)])
        .prop_map(|vs| {
            let mut a = Assignment::new();
            for (s, (n, d)) in SYMS.iter().zip(vs) {
                a.set(s, rat(n, d));
            }
            a
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn laurent_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * LaurentPoly::one(), a.clone());
    }

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        if !a.is_zero() {
            prop_assert!((&a * a.inv().unwrap()).is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reduce_is_canonical(a in ratfunc(), b in nonzero_poly()) {
        let r = a.reduce();
        prop_assert_eq!(&r, &a);
        prop_assert_eq!(r.reduce().to_string(), r.to_string());
        // A common factor does not change the canonical form.
        let scaled = RatFunc::new(a.numer() * &b, a.denom() * &b).unwrap();
        prop_assert_eq!(scaled.to_string(), a.to_string());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), pt in point()) {
        let (Ok(ea), Ok(eb)) = (a.evaluate(&pt), b.evaluate(&pt)) else { return Ok(()); };
        let (ea, eb) = (ea.value.as_exact().unwrap().clone(), eb.value.as_exact().unwrap().clone());
        let prod = (&a * &b).evaluate(&pt).unwrap();
        prop_assert_eq!(prod.value.as_exact().unwrap(), &(&ea * &eb));
        let sum = (&a + &b).evaluate(&pt).unwrap();
        prop_assert_eq!(sum.value.as_exact().unwrap(), &(&ea + &eb));
    }

    #[test]
    fn geometric_sum_inverts_one_minus_ratio(r in ratfunc()) {
        prop_assume!(!r.is_one());
        let s = geometric_sum(&r).unwrap();
        prop_assert!((s * (RatFunc::one() - r)).is_one());
    }

    #[test]
    fn equality_is_an_equivalence(a in ratfunc(), b in nonzero_poly(), c in nonzero_poly()) {
        let a1 = RatFunc::new(a.numer() * &b, a.denom() * &b).unwrap();
        let a2 = RatFunc::new(a.numer() * &c, a.denom() * &c).unwrap();
        prop_assert_eq!(&a, &a);
        prop_assert_eq!(&a1, &a);
        prop_assert_eq!(&a, &a1);
        prop_assert_eq!(&a1, &a2);
    }
}
