use adjoint_local::g2::*;
use adjoint_local::symalg::{var, LaurentPoly};

#[test]
fn structure_suite_passes() {
    let checks = structure_checks(7);
    for c in &checks {
        assert!(c.passed, "{}: {} vs {}", c.id, c.lhs, c.rhs);
    }
    assert!(checks.len() >= 40);
}

#[test]
fn single_parameter_entry() {
    let mut p = HRhoParams::zero();
    p.f = var("f");
    let tau = var("tau");
    let m = stabilizer_conjugation(&p, &tau).unwrap();
    assert_eq!(*m.get(0, 2), -(var("f") * tau.pow(-1)).scale(&adjoint_local::symalg::rat(1, 2)));
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)] {
        assert!(m.get(i, j).is_zero());
    }
}

#[test]
fn embedded_unipotents_fix_the_rotated_vector() {
    let x = Mat::units(3, &[(1, 2, 1), (1, 3, -2), (2, 3, 3)]);
    let g = embed_sl3(&x).unwrap().0.exp_nilpotent(&var("s")).unwrap();
    let tau = var("tau");
    let mut v = vec![LaurentPoly::zero(); 8];
    v[3] = -&tau;
    v[4] = -&tau;
    assert_eq!(apply(&g, &v), v);
}

#[test]
fn sl3_embedding_is_multiplicative() {
    let tau = var("tau");
    let (g, h) = (n2_rho(&var("r"), &var("t"), &tau), u_rho(&var("x"), &var("y"), &var("w"), &tau));
    let lhs = sl3_into_g2(&(&g * &h), &tau).unwrap();
    let rhs = sl3_into_g2(&g, &tau).unwrap().mul(&sl3_into_g2(&h, &tau).unwrap());
    assert_eq!(lhs, rhs);
    // ι lands in the stabilizer of v_ρ.
    let rho = &tau * &tau;
    assert_eq!(apply(&lhs.0, &v_rho(&rho)), v_rho(&rho));
}
