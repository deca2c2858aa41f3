use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::padic::MultChar;
use crate::report::Check;
use crate::symalg::{rat, var, Assignment, LaurentPoly, RatFunc, Symbol};

use super::*;

/// Which of π and χ are ramified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum ZetaCase {
    /// μ2 unramified, χ ramified.
    UnramChi,
    BothRam,
    /// μ2 ramified, χ unramified.
    RamMu2,
}

impl ZetaCase {
    pub const ALL: [ZetaCase; 3] = [ZetaCase::UnramChi, ZetaCase::BothRam, ZetaCase::RamMu2];

    pub fn name(self) -> &'static str {
        match self {
            ZetaCase::UnramChi => "unram-chi",
            ZetaCase::BothRam => "both-ram",
            ZetaCase::RamMu2 => "ram-mu2",
        }
    }

    pub fn parse(s: &str) -> Option<ZetaCase> {
        ZetaCase::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Primitive characters of conductor 1 and 2.
fn ramified_chars(p: u32) -> Vec<MultChar> {
    (1..=2).flat_map(|c| MultChar::all_primitive(p, c)).collect()
}

/// Every nontempered datum of the given case over Q_p with conductors ≤ 2, α = 1/3.
pub fn case_specs(case: ZetaCase, p: u32) -> Vec<NontemperedSpec> {
    let chars = ramified_chars(p);
    let mk = |mu2: Option<&MultChar>, chi: Option<&MultChar>| NontemperedSpec {
        p,
        alpha: rat(1, 3),
        mu2: mu2.cloned(),
        chi: chi.cloned(),
    };
    match case {
        ZetaCase::UnramChi => chars.iter().map(|c| mk(None, Some(c))).collect(),
        ZetaCase::RamMu2 => chars.iter().map(|m| mk(Some(m), None)).collect(),
        ZetaCase::BothRam => {
            let mut out = Vec::new();
            for m in &chars {
                for c in &chars {
                    out.push(mk(Some(m), Some(c)));
                }
            }
            out
        }
    }
}

fn catalog_checks(case: ZetaCase) -> Vec<Check> {
    let mut out = Vec::new();
    for p in [3, 5] {
        let start = Instant::now();
        let all = case_specs(case, p);
        let mut bad = Vec::new();
        for s in &all {
            let ok = match (adjoint_lfactor_catalog(s, 1, 0), adjoint_lfactor_rs(s, 1, 0)) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            };
            if !ok {
                bad.push(format!("{:?}/{:?}", s.mu2.as_ref().map(|m| (m.c, m.index)), s.chi.as_ref().map(|m| (m.c, m.index))));
            }
        }
        out.push(Check::holds(
            &format!("zeta.{}.catalog-vs-rankin-selberg.p{p}", case.name()),
            "L(s, Ad×χ) = L(s, χπ×π̃)/L(s, χ)",
            bad.is_empty(),
            format!("displayed product, {} character choices", all.len()),
            if bad.is_empty() { "nine-factor expansion".into() } else { format!("differs at {}", bad.join(", ")) },
            start,
        ));
    }
    out
}

fn err_check(id: &str, anchor: &str, e: ZetaError, start: Instant) -> Check {
    Check::holds(id, anchor, false, e.to_string(), String::new(), start)
}

fn displayed_catalog_check(case: ZetaCase) -> Check {
    let start = Instant::now();
    let id = format!("zeta.{}.displayed-lfactor", case.name());
    let m = |i| MultChar::new(5, 1, i, (0, 1)).expect("valid");
    let (u, t1) = (var("u"), var("t1"));
    let (spec, anchor, want) = match case {
        ZetaCase::UnramChi => (NontemperedSpec { p: 5, alpha: rat(1, 3), mu2: None, chi: Some(m(1)) }, "L(s, Ad×χ) = 1", Ok(RatFunc::one())),
        // μ2 of order 4 and χ of order 2 on the units: χμ2^{±1} both ramified.
        ZetaCase::BothRam => {
            (NontemperedSpec { p: 5, alpha: rat(1, 3), mu2: Some(m(1)), chi: Some(m(2)) }, "χμ2^{±1} ramified gives L = 1", Ok(RatFunc::one()))
        }
        ZetaCase::RamMu2 => {
            let want = (|| -> Result<RatFunc, ZetaError> {
                let lu = l_unram(&u, 1, 0)?;
                Ok(&(&(&lu * &lu) * &l_unram(&(&u * t1.pow(2)), 1, 0)?) * &l_unram(&(&u * t1.pow(-2)), 1, 0)?)
            })();
            (NontemperedSpec { p: 5, alpha: rat(1, 3), mu2: Some(m(1)), chi: None }, "L(s,χ)²L(s,χ|·|^{2α})L(s,χ|·|^{−2α})", want)
        }
    };
    match (adjoint_lfactor_catalog(&spec, 1, 0), want) {
        (Ok(got), Ok(want)) => Check::exact(&id, anchor, &got, &want, start),
        (Err(e), _) | (_, Err(e)) => err_check(&id, anchor, e, start),
    }
}

/// Exact checks of the special-case zeta integral and the normalized ratio.
fn special_case_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let anchor_z = "Z(W_c, f̃_s)/D_c = (1 + uqX³)/((1 − t1²uqX³)(1 − t1⁻²uqX³))";
    let start = Instant::now();
    let (case, display) = match (zeta_special_case(25), zeta_special_display()) {
        (Ok(c), Ok(d)) => (c, d),
        (Err(e), _) | (_, Err(e)) => {
            out.push(err_check("zeta.ram-mu2.special-case", anchor_z, e, start));
            return out;
        }
    };
    out.push(Check::exact("zeta.ram-mu2.special-case.geometric", anchor_z, &case.series, &display, start));
    out.push(Check::exact("zeta.ram-mu2.special-case.partial-plus-tail", anchor_z, &case.partial_plus_tail, &display, start));

    let start = Instant::now();
    let one = LaurentPoly::one();
    let spec = |d: &RatFunc, pairs: &[(&str, &LaurentPoly)]| {
        let mut r = d.clone();
        for (s, v) in pairs {
            r = r.subs(Symbol::new(s), v)?;
        }
        Ok::<RatFunc, SymError>(r)
    };
    let y = var("q") * var("X").pow(3);
    let at_one = RatFunc::new(&one + &y, (&one - &y).pow(2)).and_then(|w| Ok((spec(&display, &[("t1", &one), ("u", &one)])?, w)));
    match at_one {
        Ok((got, want)) => out.push(Check::exact("zeta.ram-mu2.special-case.t1-u-one", "t1 = u = 1 gives (1+qX³)/(1−qX³)²", &got, &want, start)),
        Err(e) => out.push(err_check("zeta.ram-mu2.special-case.t1-u-one", "t1 = u = 1", e.into(), start)),
    }
    let start = Instant::now();
    match spec(&case.series, &[("u", &LaurentPoly::zero())]) {
        Ok(got) => out.push(Check::exact("zeta.ram-mu2.special-case.u-zero", "only m = 0 survives at u = 0", &got, &RatFunc::one(), start)),
        Err(e) => out.push(err_check("zeta.ram-mu2.special-case.u-zero", "u = 0", e.into(), start)),
    }

    let anchor_r = "L(3s,χ)L(6s−2,χ²)L(9s−3,χ³)·Z/L(3s−1, Ad×χ) = 1/((1−uX³)(1+uqX³+u²q²X⁶))";
    let start = Instant::now();
    let mu2 = MultChar::new(5, 1, 1, (0, 1)).expect("valid");
    let nt = NontemperedSpec { p: 5, alpha: rat(1, 3), mu2: Some(mu2), chi: None };
    let ratio = adjoint_lfactor_catalog(&nt, 3, -1).and_then(|l| normalized_ratio(&display, &l));
    let ratio = match (ratio, normalized_ratio_display()) {
        (Ok(r), Ok(d)) => {
            out.push(Check::exact("zeta.ram-mu2.normalized-ratio", anchor_r, &r, &d, start));
            r
        }
        (Err(e), _) | (_, Err(e)) => {
            out.push(err_check("zeta.ram-mu2.normalized-ratio", anchor_r, e, start));
            return out;
        }
    };
    let start = Instant::now();
    let unit = ratio.numer().as_monomial().is_some();
    out.push(Check::holds(
        "zeta.ram-mu2.normalized-ratio.unit-numerator",
        "the ratio is 1/(polynomial)",
        unit,
        format!("numerator {}", ratio.numer()),
        "a monomial".into(),
        start,
    ));

    for q in [2, 3, 5] {
        let start = Instant::now();
        match scan_no_zeros(q) {
            Ok(r) => out.push(Check::holds(
                &format!("zeta.ram-mu2.no-zeros.q{q}"),
                "no zeros on |X| ≤ q^{-1/2}, |u| = 1",
                r.points >= 1000 && r.min_abs_denominator > 1e-6,
                format!("min |den| = {:.6e} over {} points", r.min_abs_denominator, r.points),
                "> 1e-6".into(),
                start,
            )),
            Err(e) => out.push(err_check(&format!("zeta.ram-mu2.no-zeros.q{q}"), "no zeros", e, start)),
        }
    }

    let start = Instant::now();
    let a = Assignment::new().with("u", 1i64).with("q", 3i64).with("X", rat(1, 3));
    let v = ratio.evaluate(&a);
    let finite = v.as_ref().map(|e| e.value.to_complex().is_finite()).unwrap_or(false);
    out.push(Check::holds(
        "zeta.ram-mu2.finite-at-third",
        "u = 1, q = 3: the ratio is finite at X = 1/3",
        finite,
        match &v {
            Ok(e) => format!("{:?}", e.value),
            Err(e) => e.to_string(),
        },
        "finite".into(),
        start,
    ));
    out
}

/// Gamma factor comparison for symbolic and random unramified data.
pub fn gamma_checks(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    let start = Instant::now();
    match tate_gamma(&LaurentPoly::one(), 1, 0) {
        Ok(g) => {
            let x = var("X");
            let want = RatFunc::new(LaurentPoly::one() - &x, LaurentPoly::one() - (var("q") * &x).pow(-1));
            match want {
                Ok(w) => out.push(Check::exact("zeta.gamma.tate-trivial", "γ(s, 1) = L(1−s)/L(s)", &g, &w, start)),
                Err(e) => out.push(err_check("zeta.gamma.tate-trivial", "γ(s, 1)", e.into(), start)),
            }
        }
        Err(e) => out.push(err_check("zeta.gamma.tate-trivial", "γ(s, 1)", e, start)),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data: Vec<(String, [LaurentPoly; 3], LaurentPoly)> = vec![("symbolic".into(), [var("m1"), var("m2"), var("m3")], var("u"))];
    for i in 0..3 {
        let mut r = || LaurentPoly::constant(rat(rng.gen_range(1..=9), rng.gen_range(1..=9)));
        data.push((format!("random{i}"), [r(), r(), r()], r()));
    }
    for (name, mu, u) in data {
        let start = Instant::now();
        match gamma_assembly(&mu, &u) {
            Ok(r) => {
                out.push(Check::holds(
                    &format!("zeta.gamma.rankin-selberg.{name}"),
                    "γ(s, χπ×π̃) = Π γ(s, χμ_iμ_j⁻¹)",
                    r.rankin_selberg_agrees,
                    "product of nine Tate gammas".into(),
                    "L(1−s, χ⁻¹π̃×π)/L(s, χπ×π̃)".into(),
                    start,
                ));
                out.push(Check::exact(
                    &format!("zeta.gamma.formula-ratio.{name}"),
                    "gamma factor formula, unramified (reported comparison)",
                    &r.ratio,
                    &RatFunc::one(),
                    start,
                ));
            }
            Err(e) => out.push(err_check(&format!("zeta.gamma.{name}"), "gamma factor formula", e, start)),
        }
    }
    out
}

/// All checks for one ramification case.
pub fn case_checks(case: ZetaCase) -> Vec<Check> {
    let mut out = catalog_checks(case);
    out.push(displayed_catalog_check(case));
    if case == ZetaCase::RamMu2 {
        out.extend(special_case_checks());
    }
    out
}
