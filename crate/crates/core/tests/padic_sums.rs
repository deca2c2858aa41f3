use adjoint_local::padic::{
    char_sum_additive, char_sum_additive_closed, char_sum_mult, char_sum_mult_closed, AdditiveChar, MultChar,
};
use adjoint_local::symalg::rat;
use proptest::prelude::*;

#[test]
fn additive_sums_match_closed_form() {
    for p in [2u32, 3, 5] {
        let psi = AdditiveChar::unramified(p);
        for k in -4..=4 {
            assert_eq!(char_sum_additive(k, &psi).as_rational(), Some(char_sum_additive_closed(k, p)), "p={p} k={k}");
        }
    }
}

#[test]
fn multiplicative_sums_match_closed_form() {
    for p in [2u32, 3, 5] {
        for c in [1u32, 2] {
            let chars = MultChar::all_primitive(p, c);
            if p == 2 && c == 1 {
                assert!(chars.is_empty());
                continue;
            }
            for base in chars {
                for varpi in [(0, 1), (1, 3), (1, 4)] {
                    let chi = MultChar::new(p, c, base.index, varpi).unwrap();
                    for i in -4..=4 {
                        let got = char_sum_mult(i, &chi).unwrap();
                        assert_eq!(got.as_rational(), Some(char_sum_mult_closed(i, p, c)), "p={p} c={c} idx={} i={i}", chi.index);
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn additive_character_is_a_homomorphism(a in -500i64..500, b in 1i64..4, c in -500i64..500, d in 1i64..4, p in prop::sample::select(vec![2u32, 3, 5])) {
        let psi = AdditiveChar { p, conductor: 1 };
        let x = rat(a, (p as i64).pow(b as u32));
        let y = rat(c, (p as i64).pow(d as u32));
        let lhs = psi.eval(&(&x + &y));
        prop_assert!((lhs - psi.eval(&x) * psi.eval(&y)).norm() < 1e-12);
    }

    #[test]
    fn multiplicative_character_is_multiplicative(u in 1u64..10_000, v in 1u64..10_000, k in -5i64..5, l in -5i64..5) {
        let chi = MultChar::new(5, 2, 3, (1, 6)).unwrap();
        prop_assume!(u % 5 != 0 && v % 5 != 0);
        let n = chi.field_order() as i64;
        let lhs = chi.exponent(k + l, u * v % 25).unwrap();
        let rhs = (chi.exponent(k, u).unwrap() + chi.exponent(l, v).unwrap()).rem_euclid(n);
        prop_assert_eq!(lhs, rhs);
    }
}
