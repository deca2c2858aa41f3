use adjoint_local::report::Check;
use adjoint_local::zeta::{case_checks, gamma_checks, scan_no_zeros, ZetaCase};

fn assert_all(checks: &[Check]) {
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn unramified_chi_case() {
    assert_all(&case_checks(ZetaCase::UnramChi));
}

#[test]
fn both_ramified_case() {
    assert_all(&case_checks(ZetaCase::BothRam));
}

#[test]
fn ramified_mu2_case() {
    let checks = case_checks(ZetaCase::RamMu2);
    assert!(checks.iter().any(|c| c.id == "zeta.ram-mu2.normalized-ratio"));
    assert_all(&checks);
}

#[test]
fn gamma_comparison() {
    assert_all(&gamma_checks(7));
}

#[test]
fn scan_covers_thousand_points() {
    for q in [2, 3, 5] {
        let r = scan_no_zeros(q).unwrap();
        assert_eq!(r.points, 1000);
        assert!(r.min_abs_denominator > 1e-3, "{r:?}");
    }
}

#[test]
fn case_names_round_trip() {
    for c in ZetaCase::ALL {
        assert_eq!(ZetaCase::parse(c.name()), Some(c));
    }
    assert_eq!(ZetaCase::parse("nope"), None);
}
