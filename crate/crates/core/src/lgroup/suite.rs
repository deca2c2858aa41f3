use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::g2::Mat;
use crate::report::Check;
use crate::symalg::{LaurentPoly, RatFunc};

use super::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    AsaiSbc,
    Rog21,
    Eta111,
    Satake111,
}

impl Identity {
    pub const ALL: [Identity; 4] = [Identity::AsaiSbc, Identity::Rog21, Identity::Eta111, Identity::Satake111];

    pub fn name(self) -> &'static str {
        match self {
            Identity::AsaiSbc => "asai-sbc",
            Identity::Rog21 => "rog21",
            Identity::Eta111 => "eta111",
            Identity::Satake111 => "satake-111",
        }
    }

    pub fn parse(s: &str) -> Option<Identity> {
        Identity::ALL.into_iter().find(|i| i.name() == s)
    }
}

fn random_mu(rng: &mut ChaCha8Rng) -> Mu {
    Mu { split: random_unit(rng), inert: random_unit(rng) }
}

fn product(fs: &[RatFunc]) -> RatFunc {
    fs.iter().fold(RatFunc::one(), |acc, f| &acc * f)
}

fn l(sp: &SatakeParam, r: &RepAction) -> Result<RatFunc, LGroupError> {
    local_lfactor(sp, r)
}

/// Runs `trial` on `samples` random parameters of each Frobenius class and
/// reports one check per class.
#[allow(clippy::too_many_arguments)]
fn sampled(
    out: &mut Vec<Check>,
    id: &str,
    anchor: &str,
    lhs: &str,
    rhs: &str,
    seed: u64,
    samples: usize,
    mut trial: impl FnMut(Place, &mut ChaCha8Rng) -> Result<bool, LGroupError>,
) {
    for place in Place::ALL {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (place as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut agree = 0;
        let mut first_error = None;
        for _ in 0..samples {
            match trial(place, &mut rng) {
                Ok(true) => agree += 1,
                Ok(false) => {}
                Err(e) => {
                    first_error.get_or_insert(e.to_string());
                }
            }
        }
        let passed = agree == samples && samples > 0;
        let detail = first_error.map(|e| format!(" ({e})")).unwrap_or_default();
        out.push(Check::holds(
            &format!("{id}.{}", place.name()),
            anchor,
            passed,
            format!("{lhs}: {agree}/{samples} samples agree{detail}"),
            rhs.to_string(),
            start,
        ));
    }
}

fn asai_sbc(out: &mut Vec<Check>, seed: u64, samples: usize) {
    for n in [2usize, 3] {
        for sign in [Sign::Plus, Sign::Minus] {
            let lhs = pullback(&asai(n, sign), &stable_base_change(n)).expect("tags match");
            let group = LGroup::single(Factor::U(n));
            let twisted = (n % 2 == 1) == (sign == Sign::Plus);
            let rhs = if twisted {
                direct_sum(&[adjoint_twisted(n), trivial(&group)])
            } else {
                direct_sum(&[adjoint(Factor::U(n)), quadratic_character(&group)])
            }
            .expect("same group");
            let anchor = format!("{}∘sbc = {} on U{n}", asai(n, sign).name, rhs.name);
            sampled(
                out,
                &format!("lgroup.asai-sbc.n{n}.{}", sign.name()),
                &anchor,
                &lhs.name,
                &rhs.name,
                seed + n as u64 * 2 + (sign == Sign::Minus) as u64,
                samples,
                |place, rng| {
                    let sp = SatakeParam::random(&group, place, rng);
                    Ok(l(&sp, &lhs)? == l(&sp, &rhs)?)
                },
            );
        }
    }
}

/// The AI∘sbc factor of π1 ⊗ η⁻¹ twisted by μ, as a representation of U2×U1.
fn ai_sbc_factor(mu: &Mu) -> Result<RepAction, LGroupError> {
    let chain = compose(
        &automorphic_induction(2),
        &compose(&mu_twist(2, mu), &compose(&stable_base_change(2), &eta_untwist())?)?,
    )?;
    pullback(&standard(4), &chain)
}

fn rog21_group() -> LGroup {
    LGroup(vec![Factor::U(2), Factor::U(1)])
}

fn rog21(out: &mut Vec<Check>, seed: u64, samples: usize) {
    let group = rog21_group();
    for twisted in [false, true] {
        let (ad3, ad2, middle, tag) = if twisted {
            (adjoint_twisted(3), adjoint_twisted(2), trivial(&group), "ad-prime")
        } else {
            (adjoint(Factor::U(3)), adjoint(Factor::U(2)), quadratic_character(&group), "ad")
        };
        let x_part = pullback(&ad2, &projection(&group, 0)).expect("tags match");
        let anchor = format!("L({}∘ξ21) = L(π1, {})·L({})·L(μ⊗AI sbc(π1⊗η⁻¹))", ad3.name, ad2.name, middle.name);
        let lhs_name = format!("{}∘ξ21", ad3.name);
        let trial = |place: Place, rng: &mut ChaCha8Rng| -> Result<bool, LGroupError> {
            let mu = random_mu(rng);
            let sp = SatakeParam::random(&group, place, rng);
            let lhs = l(&sp, &pullback(&ad3, &xi21(&mu))?)?;
            let factors = product(&[l(&sp, &x_part)?, l(&sp, &middle)?, l(&sp, &ai_sbc_factor(&mu)?)?]);
            Ok(lhs == factors)
        };
        sampled(out, &format!("lgroup.rog21.{tag}"), &anchor, &lhs_name, "product of three factors", seed + 11 + twisted as u64, samples, trial);

        // The coordinate decomposition X(x, z, u, v) of 𝔰𝔩3 as a second route.
        let anchor = format!("{}∘ξ21 = x ⊕ z ⊕ (u,v)", ad3.name);
        let trial = |place: Place, rng: &mut ChaCha8Rng| -> Result<bool, LGroupError> {
            let mu = random_mu(rng);
            let sp = SatakeParam::random(&group, place, rng);
            let lhs = l(&sp, &pullback(&ad3, &xi21(&mu))?)?;
            let parts = direct_sum(&[x_part.clone(), middle.clone(), rog21_uv(&mu, twisted)])?;
            let uv_vs_ai = l(&sp, &rog21_uv(&mu, twisted))? == l(&sp, &ai_sbc_factor(&mu)?)?;
            Ok(lhs == l(&sp, &parts)? && uv_vs_ai)
        };
        sampled(out, &format!("lgroup.rog21.{tag}.coordinates"), &anchor, &lhs_name, "x ⊕ z ⊕ (u,v)", seed + 13 + twisted as u64, samples, trial);
    }
}

/// L^T(s, sbc(η_i/η_j)) as the standard L-factor of AI∘sbc.
fn sbc_ratio(i: usize, j: usize) -> Result<RepAction, LGroupError> {
    let chain = compose(&automorphic_induction(1), &compose(&stable_base_change(1), &character_ratio(i, j))?)?;
    pullback(&standard(2), &chain)
}

fn eta111(out: &mut Vec<Check>, seed: u64, samples: usize) {
    let group = LGroup(vec![Factor::U(1); 3]);
    let ratios: Vec<RepAction> = [(0, 1), (0, 2), (1, 2)].iter().map(|&(i, j)| sbc_ratio(i, j).expect("tags match")).collect();
    for twisted in [false, true] {
        let (ad3, chi, tag) = if twisted {
            (adjoint_twisted(3), trivial(&group), "ad-prime")
        } else {
            (adjoint(Factor::U(3)), quadratic_character(&group), "ad")
        };
        let lhs = pullback(&ad3, &xi111()).expect("tags match");
        let anchor = format!("L({}∘ξ111) = L({})²·Π L(sbc(η_i/η_j))", ad3.name, chi.name);
        let trial = |place: Place, rng: &mut ChaCha8Rng| -> Result<bool, LGroupError> {
            let sp = SatakeParam::random(&group, place, rng);
            let c = l(&sp, &chi)?;
            let mut fs = vec![c.clone(), c];
            for r in &ratios {
                fs.push(l(&sp, r)?);
            }
            let got = l(&sp, &lhs)?;
            Ok(got == product(&fs) && got == eta111_display(&sp, twisted))
        };
        sampled(out, &format!("lgroup.eta111.{tag}"), &anchor, &lhs.name, "χ² and three sbc factors", seed + 21 + twisted as u64, samples, trial);
    }
}

/// Closed forms: split (1−εX)⁻²·Π_{i<j}(1−(c_i/c_j)X)⁻¹(1−(c_j/c_i)X)⁻¹ with
/// ε = 1; inert (1∓X)⁻⁵(1±X)⁻³ from the transpose acting on 𝔰𝔩3.
fn eta111_display(sp: &SatakeParam, twisted: bool) -> RatFunc {
    let x = LaurentPoly::var("X");
    let one = LaurentPoly::one();
    let den = match sp.place {
        Place::Split => {
            let c: Vec<LaurentPoly> = sp.elem.iter().map(|m| m.get(0, 0).clone()).collect();
            let mut d = (&one - &x).pow(2);
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                let r = &c[i] * &c[j].inv().expect("unit");
                d = d * (&one - &r * &x) * (&one - &r.inv().expect("unit") * &x);
            }
            d
        }
        Place::Inert => {
            let (sym, anti) = if twisted { (&one - &x, &one + &x) } else { (&one + &x, &one - &x) };
            sym.pow(5) * anti.pow(3)
        }
    };
    RatFunc::new(one, den).expect("nonzero")
}

fn satake111(out: &mut Vec<Check>, seed: u64, samples: usize) {
    let group = LGroup(vec![Factor::U(1); 3]);
    let direct = xi111();
    let anchor = "ξ21∘(ξ11×id) = ξ111 on Satake data";
    let trial = |place: Place, rng: &mut ChaCha8Rng| -> Result<bool, LGroupError> {
        let mu = random_mu(rng);
        let composite = compose(&xi21(&mu), &xi11_times_id(&mu))?;
        let sp = SatakeParam::random(&group, place, rng);
        let (a, b) = (composite.apply(&sp)?, direct.apply(&sp)?);
        let expected = match place {
            Place::Split => Mat::diag(&sp.elem.iter().map(|m| m.get(0, 0).clone()).collect::<Vec<_>>()),
            Place::Inert => antidiagonal(3),
        };
        let mut ok = a == b && a.elem == vec![expected];
        for r in [adjoint(Factor::U(3)), adjoint_twisted(3)] {
            ok &= l(&sp, &pullback(&r, &composite)?)? == l(&sp, &pullback(&r, &direct)?)?;
        }
        Ok(ok)
    };
    sampled(out, "lgroup.satake-111", anchor, "ξ21∘(ξ11×id)", "diag(t1,t2,t3)·w split, J·w inert", seed + 31, samples, trial);
}

/// Checks for one identity at `samples` random parameters per Frobenius class.
pub fn identity_checks(identity: Identity, seed: u64, samples: usize) -> Vec<Check> {
    let mut out = Vec::new();
    match identity {
        Identity::AsaiSbc => asai_sbc(&mut out, seed, samples),
        Identity::Rog21 => rog21(&mut out, seed, samples),
        Identity::Eta111 => eta111(&mut out, seed, samples),
        Identity::Satake111 => satake111(&mut out, seed, samples),
    }
    out
}

/// Every implemented L-homomorphism with a representation of its target.
fn functoriality_pairs(mu: &Mu) -> Result<Vec<(LHom, RepAction)>, LGroupError> {
    let composite = compose(&xi21(mu), &xi11_times_id(mu))?;
    let ai_chain = compose(&automorphic_induction(2), &compose(&mu_twist(2, mu), &stable_base_change(2))?)?;
    let g21 = rog21_group();
    Ok(vec![
        (base_change(2), asai(2, Sign::Plus)),
        (base_change(3), asai(3, Sign::Minus)),
        (automorphic_induction(1), standard(2)),
        (automorphic_induction(2), standard(4)),
        (stable_base_change(1), asai(1, Sign::Plus)),
        (stable_base_change(2), asai(2, Sign::Plus)),
        (stable_base_change(2), asai(2, Sign::Minus)),
        (stable_base_change(3), asai(3, Sign::Plus)),
        (stable_base_change(3), asai(3, Sign::Minus)),
        (mu_twist(2, mu), asai(2, Sign::Plus)),
        (xi21(mu), adjoint(Factor::U(3))),
        (xi21(mu), adjoint_twisted(3)),
        (xi11(mu), adjoint(Factor::U(2))),
        (xi11(mu), adjoint_twisted(2)),
        (xi111(), adjoint(Factor::U(3))),
        (xi11_times_id(mu), pullback(&adjoint(Factor::U(3)), &xi21(mu))?),
        (composite, adjoint(Factor::U(3))),
        (projection(&g21, 0), adjoint(Factor::U(2))),
        (projection(&g21, 1), pullback(&asai(1, Sign::Plus), &stable_base_change(1))?),
        (eta_untwist(), pullback(&standard(4), &ai_chain)?),
        (character_ratio(0, 2), pullback(&standard(2), &compose(&automorphic_induction(1), &stable_base_change(1))?)?),
    ])
}

/// local_lfactor(sp, r∘h) = local_lfactor(h(sp), r) for every implemented h,
/// plus the structural relations of each map and representation.
pub fn functoriality_checks(seed: u64, samples: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mu = random_mu(&mut rng);
    let pairs = match functoriality_pairs(&mu) {
        Ok(p) => p,
        Err(e) => {
            out.push(Check::holds("lgroup.functoriality", "pullback ∘ apply", false, e.to_string(), String::new(), Instant::now()));
            return out;
        }
    };
    for (k, (h, r)) in pairs.iter().enumerate() {
        let start = Instant::now();
        let mut agree = 0;
        let mut total = 0;
        let pulled = pullback(r, h);
        for place in Place::ALL {
            for _ in 0..samples {
                total += 1;
                let sp = SatakeParam::random(&h.source, place, &mut rng);
                let ok = pulled.as_ref().ok().and_then(|p| {
                    let a = l(&sp, p).ok()?;
                    let b = l(&h.apply(&sp).ok()?, r).ok()?;
                    Some(a == b)
                });
                agree += usize::from(ok == Some(true));
            }
        }
        out.push(Check::holds(
            &format!("lgroup.functoriality.{k:02}"),
            "L(sp, r∘h) = L(h(sp), r)",
            agree == total,
            format!("{}∘{} on {}: {agree}/{total}", r.name, h.name, h.source),
            "L(h(sp), r)".into(),
            start,
        ));

        let start = Instant::now();
        let mut ok = true;
        for _ in 0..10 {
            let g1 = random_element(&h.source, &mut rng);
            let g2 = random_element(&h.source, &mut rng);
            ok &= h.is_homomorphism(&g1, &g2).unwrap_or(false);
            ok &= r.is_consistent(&random_element(&r.group, &mut rng)).unwrap_or(false);
            ok &= pulled.as_ref().map(|p| p.is_consistent(&g1).unwrap_or(false)).unwrap_or(false);
        }
        out.push(Check::holds(
            &format!("lgroup.semidirect.{k:02}"),
            "L-homomorphism and representation relations",
            ok,
            format!("{} and {}", h.name, r.name),
            "h(σg)m = m σ(h(g)), m σ(m) = m(w²), r(w)² = r(w²)".into(),
            start,
        ));
    }
    out.extend(property_checks(&mut rng, samples));
    out
}

fn property_checks(rng: &mut ChaCha8Rng, samples: usize) -> Vec<Check> {
    let mut out = Vec::new();

    let start = Instant::now();
    let g3 = LGroup::single(Factor::Gl(3));
    let ad_plus = direct_sum(&[adjoint(Factor::Gl(3)), trivial(&g3)]).expect("same group");
    let x = LaurentPoly::var("X");
    let mut ok = true;
    for _ in 0..samples {
        let sp = SatakeParam::random(&g3, Place::Split, rng);
        let t: Vec<LaurentPoly> = (0..3).map(|i| sp.elem[0].get(i, i).clone()).collect();
        let mut den = LaurentPoly::one();
        for a in &t {
            for b in &t {
                den = den * (LaurentPoly::one() - a * &b.inv().expect("unit") * &x);
            }
        }
        ok &= l(&sp, &ad_plus).ok() == RatFunc::new(LaurentPoly::one(), den).ok();
    }
    out.push(Check::holds(
        "lgroup.gl3-adjoint-plus-trivial",
        "Ad ⊕ 1 = std ⊗ std∨ on GL3",
        ok,
        "L(Ad ⊕ 1)".into(),
        "Π_{i,j} (1 − t_i/t_j X)⁻¹".into(),
        start,
    ));

    let start = Instant::now();
    let group = LGroup::single(Factor::U(3));
    let parts = [adjoint(Factor::U(3)), adjoint_twisted(3), quadratic_character(&group)];
    let sum = direct_sum(&parts).expect("same group");
    let mut ok = true;
    for place in Place::ALL {
        for _ in 0..samples {
            let sp = SatakeParam::random(&group, place, rng);
            let each: Option<Vec<RatFunc>> = parts.iter().map(|p| l(&sp, p).ok()).collect();
            ok &= each.map(|e| product(&e)) == l(&sp, &sum).ok();
        }
    }
    out.push(Check::holds("lgroup.direct-sum", "L(r1 ⊕ r2) = L(r1)L(r2)", ok, "L(Ad ⊕ Ad′ ⊕ χ)".into(), "product".into(), start));

    let start = Instant::now();
    let mu = random_mu(rng);
    let (a, b, c) = (automorphic_induction(2), mu_twist(2, &mu), stable_base_change(2));
    let left = compose(&compose(&a, &b).expect("tags"), &c).expect("tags");
    let right = compose(&a, &compose(&b, &c).expect("tags")).expect("tags");
    let u2 = LGroup::single(Factor::U(2));
    let mut ok = true;
    for place in Place::ALL {
        for _ in 0..samples {
            let sp = SatakeParam::random(&u2, place, rng);
            ok &= left.apply(&sp).ok() == right.apply(&sp).ok();
        }
    }
    out.push(Check::holds("lgroup.compose-associative", "(AI∘μ)∘sbc = AI∘(μ∘sbc)", ok, "(AI∘μ⊗)∘sbc".into(), "AI∘(μ⊗∘sbc)".into(), start));

    let start = Instant::now();
    let wrong = compose(&xi21(&mu), &xi111());
    out.push(Check::holds(
        "lgroup.tag-mismatch",
        "composition requires matching groups",
        matches!(wrong, Err(LGroupError::TagMismatch { .. })),
        "ξ21∘ξ111".into(),
        "tag mismatch".into(),
        start,
    ));
    out
}
