use num_complex::Complex64;

use crate::symalg::{eval_float, geometric_sum, var, Assignment, LaurentPoly, RatFunc};
use crate::whittaker::{lift_relation_w, QParam, WhittakerSpec};

use super::{l_unram, ZetaError};

/// The special-case zeta integral, divided by D_c, assembled two ways.
#[derive(Clone, Debug)]
pub struct SpecialCase {
    /// Σ_m W_c(h(ϖ^m,1))/W_c(1)·(u·q^{3}·X^{3})^m summed as geometric series.
    pub series: RatFunc,
    /// Partial sum through m = `terms` − 1 of the same series plus its exact tail.
    pub partial_plus_tail: RatFunc,
    pub terms: u32,
}

fn sym(p: LaurentPoly) -> RatFunc {
    RatFunc::from_poly(p)
}

/// Ratio and leading factor of the two geometric series in
/// (t1^{2m+1} − t1^{-(2m+1)})/(t1 − t1⁻¹)·r^m, r = u·q·X³.
fn series_from(start: u32) -> Result<RatFunc, ZetaError> {
    let (t1, u, q, x) = (var("t1"), var("u"), var("q"), var("X"));
    let step = &u * q.pow(3) * x.pow(3);
    let mut total = RatFunc::zero();
    for sign in [1i32, -1] {
        let t = t1.pow(sign);
        // q^{-2m} from the Whittaker value, (u q^{3} X^{3})^m from the character.
        let ratio = sym(t.pow(2) * q.pow(-2) * &step);
        let lead = sym(t.pow(2 * start as i32 + 1) * (q.pow(-2) * &step).pow(start as i32));
        let g = &lead * &geometric_sum(&ratio)?;
        total = if sign == 1 { &total + &g } else { &total - &g };
    }
    Ok(total.checked_div(&sym(&t1 - t1.pow(-1)))?)
}

/// Sums the Whittaker values against the character, through the closed form
/// for W_c on diag(ϖ^m, 1, ϖ^{-m}) at t3 = t1⁻¹.
pub fn zeta_special_case(terms: u32) -> Result<SpecialCase, ZetaError> {
    let series = series_from(0)?;
    let spec = WhittakerSpec::new(QParam::Symbolic, 1, true).map_err(|e| ZetaError::InvalidSpec(e.to_string()))?;
    let step = var("u") * var("q").pow(3) * var("X").pow(3);
    let mut partial = LaurentPoly::zero();
    for m in 0..terms as i64 {
        let w = lift_relation_w(&spec, m).map_err(|e| ZetaError::InvalidSpec(e.to_string()))?;
        partial += &(w * step.pow(m as i32));
    }
    let partial_plus_tail = &sym(partial) + &series_from(terms)?;
    Ok(SpecialCase { series, partial_plus_tail, terms })
}

/// (1 + uqX³)/((1 − t1²uqX³)(1 − t1⁻²uqX³)).
pub fn zeta_special_display() -> Result<RatFunc, ZetaError> {
    let (t1, u, q, x) = (var("t1"), var("u"), var("q"), var("X"));
    let y = &u * &q * x.pow(3);
    let num = LaurentPoly::one() + &y;
    let den = (LaurentPoly::one() - t1.pow(2) * &y) * (LaurentPoly::one() - t1.pow(-2) * &y);
    Ok(RatFunc::new(num, den)?)
}

/// L(3s,χ)L(6s−2,χ²)L(9s−3,χ³)·(Z/D_c)/L(3s−1, π, Ad×χ) for μ2 ramified, χ unramified.
pub fn normalized_ratio(zeta_over_dc: &RatFunc, l_adjoint_at_3s_minus_1: &RatFunc) -> Result<RatFunc, ZetaError> {
    let u = var("u");
    let front = &(&l_unram(&u, 3, 0)? * &l_unram(&u.pow(2), 6, -2)?) * &l_unram(&u.pow(3), 9, -3)?;
    Ok((&front * zeta_over_dc).checked_div(l_adjoint_at_3s_minus_1)?.reduce())
}

/// 1/((1 − uX³)(1 + uqX³ + u²q²X⁶)).
pub fn normalized_ratio_display() -> Result<RatFunc, ZetaError> {
    Ok(RatFunc::new(LaurentPoly::one(), ratio_denominator())?)
}

pub fn ratio_denominator() -> LaurentPoly {
    let (u, q, x) = (var("u"), var("q"), var("X"));
    let y = &u * &q * x.pow(3);
    (LaurentPoly::one() - &u * x.pow(3)) * (LaurentPoly::one() + &y + y.pow(2))
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ScanReport {
    pub q: u32,
    pub points: usize,
    pub min_abs_denominator: f64,
}

/// Evaluates the ratio's denominator on |X| ≤ q^{-1/2}, |u| = 1: ten radii, ten
/// arguments of X and ten of u.
pub fn scan_no_zeros(q: u32) -> Result<ScanReport, ZetaError> {
    let den = ratio_denominator();
    let r_max = (q as f64).powf(-0.5);
    let mut min = f64::INFINITY;
    let mut points = 0;
    let turn = |k: usize| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 10.0);
    for i in 1..=10 {
        let r = r_max * i as f64 / 10.0;
        for jx in 0..10 {
            for ju in 0..10 {
                let a = Assignment::new().with("q", q as i64).with("X", turn(jx) * r).with("u", turn(ju));
                let (v, _) = eval_float(&den, &a)?;
                min = min.min(v.norm());
                points += 1;
            }
        }
    }
    Ok(ScanReport { q, points, min_abs_denominator: min })
}
