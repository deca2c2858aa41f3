use std::time::Instant;

use adjoint_local::lgroup::*;
use adjoint_local::symalg::{LaurentPoly, RatFunc};

fn all_pass(checks: &[adjoint_local::report::Check]) {
    assert!(!checks.is_empty());
    for c in checks {
        assert!(c.passed, "{c:?}");
    }
}

#[test]
fn identities_at_hundred_samples_per_class() {
    let start = Instant::now();
    for id in Identity::ALL {
        let checks = identity_checks(id, 2024, 100);
        assert!(checks.iter().all(|c| c.lhs.contains("100/100")), "{checks:?}");
        all_pass(&checks);
    }
    eprintln!("identities: {:.2}s", start.elapsed().as_secs_f64());
}

#[test]
fn functoriality_for_every_map() {
    let checks = functoriality_checks(99, 100);
    assert!(checks.len() > 30);
    all_pass(&checks);
}

#[test]
fn identity_names_round_trip() {
    for id in Identity::ALL {
        assert_eq!(Identity::parse(id.name()), Some(id));
    }
    assert_eq!(Identity::parse("rog12"), None);
}

#[test]
fn rog21_at_identity_data() {
    let group = LGroup(vec![Factor::U(2), Factor::U(1)]);
    let one = LaurentPoly::one();
    let sp = SatakeParam::torus(group, Place::Split, vec![vec![one.clone(), one.clone()], vec![one.clone()]]).unwrap();
    let lhs = local_lfactor(&sp, &pullback(&adjoint_twisted(3), &xi21(&Mu::trivial())).unwrap()).unwrap();
    let want = RatFunc::new(one.clone(), (one - LaurentPoly::var("X")).pow(8)).unwrap();
    assert_eq!(lhs, want);
}

#[test]
fn eta111_split_closed_form_symbolic() {
    let group = LGroup(vec![Factor::U(1); 3]);
    let c: Vec<LaurentPoly> = ["c1", "c2", "c3"].iter().map(|s| LaurentPoly::var(s)).collect();
    let sp = SatakeParam::torus(group, Place::Split, c.iter().map(|x| vec![x.clone()]).collect()).unwrap();
    let got = local_lfactor(&sp, &pullback(&adjoint_twisted(3), &xi111()).unwrap()).unwrap();
    let (one, x) = (LaurentPoly::one(), LaurentPoly::var("X"));
    let mut den = (&one - &x).pow(2);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let r = &c[i] * &c[j].pow(-1);
        den = den * (&one - &r * &x) * (&one - &r.pow(-1) * &x);
    }
    assert_eq!(got, RatFunc::new(one, den).unwrap());
}

#[test]
fn mismatched_tags_are_rejected() {
    assert!(matches!(compose(&xi21(&Mu::trivial()), &xi111()), Err(LGroupError::TagMismatch { .. })));
    assert!(matches!(pullback(&adjoint(Factor::U(2)), &xi111()), Err(LGroupError::TagMismatch { .. })));
    let sp = SatakeParam::random(&LGroup::single(Factor::U(3)), Place::Split, &mut rand::thread_rng());
    assert!(local_lfactor(&sp, &adjoint(Factor::U(2))).is_err());
}
