use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::Check;
use crate::symalg::{rat, var, LaurentPoly, Symbol};

use super::*;

/// The 3×3 matrix obtained from 𝔥_ρ by the stabilizer conjugation, as displayed.
pub fn cm_display(p: &HRhoParams, tau: &LaurentPoly) -> Mat {
    let rho = tau * tau;
    let two = |x: LaurentPoly| x.scale(&rat(2, 1));
    let HRhoParams { t1, a, d, e, f, h, l, k } = p;
    Mat::from_rows(vec![
        vec![-(a * tau) + t1, e * tau - d, -(f * tau.pow(-1)).scale(&rat(1, 2))],
        vec![two(l * &rho) - two(h * tau), two(a * tau), -(e * tau) - d],
        vec![-two(k * tau), two(l * &rho) + two(h * tau), -(a * tau) - t1],
    ])
}

/// Roots of w_β·P·w_β⁻¹: s_β applied to the roots of P.
fn roots_of_wpw() -> Vec<Root> {
    [(1, 1), (-1, -1), (0, -1), (1, 0), (2, 1), (3, 2), (3, 1)].iter().map(|&(a, b)| Root::new(a, b)).collect()
}

/// Whether the unipotent g has logarithm supported on `allowed` roots.
fn log_supported_on(g: &G2Elem, allowed: &[Root]) -> bool {
    let Some(coords) = g.0.log_unipotent().as_ref().and_then(lie_coordinates) else {
        return false;
    };
    let roots = RootDatum::g2().roots;
    coords[..12].iter().zip(&roots).all(|(c, r)| c.is_zero() || allowed.contains(r)) && coords[12..].iter().all(|c| c.is_zero())
}

fn random_traceless(rng: &mut ChaCha8Rng) -> Mat {
    let vals: Vec<i64> = (0..9).map(|_| rng.gen_range(-5..=5)).collect();
    let mut x = Mat::from_fn(3, |i, j| LaurentPoly::int(vals[3 * i + j]));
    let t = x.get(0, 0) + x.get(1, 1);
    x.set(2, 2, -t);
    x
}

/// All structural checks on the realization, deterministic for a seed.
pub fn structure_checks(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    let (t, s, a, b, tau) = (var("t"), var("s"), var("a"), var("b"), var("tau"));
    let anchor_form = "form and invariant vector";

    let start = Instant::now();
    let mut generated: Vec<(String, G2Elem)> = Vec::new();
    for r in RootDatum::g2().roots {
        generated.push((format!("x_{r}(t)"), root_subgroup(r, &t).expect("root")));
        generated.push((format!("w_{r}(t)"), weyl(r, &t).expect("root")));
    }
    generated.push(("h(a,b)".into(), h_ab(&a, &b).expect("torus")));
    generated.push(("conjugator(τ)".into(), conjugator(&tau).expect("τ invertible")));
    generated.push(("ι(n2(r,t))".into(), sl3_into_g2(&n2_rho(&var("r"), &t, &tau), &tau).expect("SL3")));
    for (name, g) in &generated {
        let ok = g.preserves_form() && g.fixes_v0() && g.det().is_one();
        out.push(Check::holds(
            &format!("g2.invariants.{name}"),
            anchor_form,
            ok,
            "ᵀgJg, g·v0, det g".into(),
            "J, v0, 1".into(),
            start,
        ));
    }

    let start = Instant::now();
    let wb = weyl(BETA, &LaurentPoly::one()).expect("root");
    let lhs = wb.mul(&h_ab(&a, &LaurentPoly::one()).expect("torus"));
    let rhs = h_ab(&LaurentPoly::one(), &a).expect("torus").mul(&wb);
    out.push(Check::holds("g2.weyl-torus", "w_β h(a,1) = h(1,a) w_β", lhs == rhs, "w_β·h(a,1)".into(), "h(1,a)·w_β".into(), start));

    let start = Instant::now();
    let params = HRhoParams::symbolic();
    let got = stabilizer_conjugation(&params, &tau);
    let want = cm_display(&params, &tau);
    for i in 0..3 {
        for j in 0..3 {
            let id = format!("g2.stabilizer-conjugation.{}{}", i + 1, j + 1);
            let anchor = "conjugated stabilizer element";
            match &got {
                Ok(m) => out.push(Check::exact(&id, anchor, m.get(i, j), want.get(i, j), start)),
                Err(e) => out.push(Check::holds(&id, anchor, false, e.to_string(), want.get(i, j).to_string(), start)),
            }
        }
    }

    let start = Instant::now();
    match levi_modulus() {
        Ok(lm) => out.push(Check::exact("g2.levi-modulus", "δ_P(m) = |det m|³", &lm.det_ad, &lm.det_m_cubed, start)),
        Err(e) => out.push(Check::holds("g2.levi-modulus", "δ_P(m) = |det m|³", false, e.to_string(), String::new(), start)),
    }

    let start = Instant::now();
    let d = Mat::diag(&[a.clone(), b.clone(), (&a * &b).pow(-1)]);
    let img = embed_sl3_group(&d).expect("det 1");
    out.push(Check::holds(
        "g2.torus-in-sl3",
        "h(a,b) ↔ diag(a, b, 1/(ab))",
        img == h_ab(&a, &b).expect("torus"),
        "i(diag(a,b,1/(ab)))".into(),
        "h(a,b)".into(),
        start,
    ));

    let start = Instant::now();
    let xa = root_subgroup(ALPHA, &t).expect("root");
    let xb = root_subgroup(BETA, &s).expect("root");
    let comm = xa.mul(&xb).mul(&xa.inverse()).mul(&xb.inverse());
    let higher = [Root::new(1, 1), Root::new(2, 1), Root::new(3, 1), Root::new(3, 2)];
    let f = factor_unipotent(&comm, &higher);
    out.push(Check::holds(
        "g2.commutator",
        "Chevalley commutator formula",
        f.is_some(),
        "[x_α(t), x_β(s)]".into(),
        match &f {
            Some(f) => f.iter().map(|(r, c)| format!("x_{r}({c})")).collect::<Vec<_>>().join("·"),
            None => "not in U_{α+β}…U_{3α+2β}".into(),
        },
        start,
    ));

    let start = Instant::now();
    let n2 = sl3_into_g2(&n2_rho(&var("r"), &t, &tau), &tau).expect("SL3");
    let positive = RootDatum::g2().positive();
    let allowed: Vec<Root> = roots_of_wpw().into_iter().filter(|r| positive.contains(r)).collect();
    out.push(Check::holds(
        "g2.n2-rho",
        "N_{2,ρ} = U_ρ ∩ w_β P w_β⁻¹",
        log_supported_on(&n2, &allowed),
        "log ι(n2(r,t))".into(),
        format!("supported on {allowed:?}"),
        start,
    ));
    let start = Instant::now();
    let u = sl3_into_g2(&u_rho(&var("x"), &var("y"), &var("w"), &tau), &tau).expect("SL3");
    out.push(Check::holds(
        "g2.u-rho",
        "U_ρ ⊂ U",
        log_supported_on(&u, &positive),
        "log ι(u(x,y,w))".into(),
        "positive root spaces".into(),
        start,
    ));
    let start = Instant::now();
    let n = n2_rho(&var("r"), &t, &tau);
    let x_coord = (n.get(0, 1) - n.get(1, 2)).scale(&rat(1, 2));
    out.push(Check::exact("g2.psi-rho-trivial", "ψ_ρ trivial on N_{2,ρ}", &x_coord, &LaurentPoly::zero(), start));

    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    for _ in 0..20 {
        let (x, y) = (random_traceless(&mut rng), random_traceless(&mut rng));
        let (ix, iy) = (embed_sl3(&x).expect("traceless").0, embed_sl3(&y).expect("traceless").0);
        ok &= embed_sl3(&x.bracket(&y)).expect("traceless").0 == ix.bracket(&iy);
        ok &= LieElem(ix.clone()).is_valid() && lie_coordinates(&ix).is_some();
    }
    out.push(Check::holds("g2.embedding-bracket", "i is a Lie algebra map into 𝔤2", ok, "i([X,Y])".into(), "[i(X),i(Y)]".into(), start));

    let start = Instant::now();
    out.push(unitary_condition(&params, &tau, start));
    out
}

/// With τ ↦ −τ as conjugation, the displayed matrix satisfies X·J' + J'·ᵀX̄ = 0
/// for J' = antidiag(−1, 1, −1).
fn unitary_condition(p: &HRhoParams, tau: &LaurentPoly, start: Instant) -> Check {
    let x = cm_display(p, tau);
    let tau_sym = Symbol::new("tau");
    let bar = x.subs(tau_sym, &-tau).expect("substitution");
    let j = Mat::units(3, &[(1, 3, -1), (2, 2, 1), (3, 1, -1)]);
    let sum = &(&x * &j) + &(&j * &bar.transpose());
    Check::holds(
        "g2.unitary-form",
        "conjugated stabilizer lies in 𝔰𝔲(2,1)",
        sum.is_zero(),
        "X·J' + J'·ᵀX̄".into(),
        "0".into(),
        start,
    )
}
