//! F(X, Y, Z) = f(w·u(X, Y, Z)) through the membership decision; the ball
//! path certifies a whole cell, the exact path evaluates one point.

use crate::padic::{PadicError, PadicNum};
use crate::symalg::Q;
use crate::whittaker::{section_support, ExactPadic, Support};

/// w·u(X, Y, Z) = [[0,0,1],[0,1,Y],[1,X,Z]].
fn weyl_times_unipotent<S: Clone>(zero: S, one: S, x: S, y: S, z: S) -> [[S; 3]; 3] {
    [[zero.clone(), zero.clone(), one.clone()], [zero, one.clone(), y], [one, x, z]]
}

pub fn f_ball(p: u32, c: u32, rel: u32, x: PadicNum, y: PadicNum, z: PadicNum) -> Result<Support, PadicError> {
    let g = weyl_times_unipotent(PadicNum::zero(p), PadicNum::uniformizer_pow(p, 0, rel), x, y, z);
    section_support(&g, c)
}

pub fn f_exact(p: u32, c: u32, x: &Q, y: &Q, z: &Q) -> Result<Support, PadicError> {
    let e = |v: &Q| ExactPadic::new(p, v.clone());
    let g = weyl_times_unipotent(e(&Q::from_integer(0.into())), e(&Q::from_integer(1.into())), e(x), e(y), e(z));
    section_support(&g, c)
}

/// Evaluates at an exactly known point, falling back to rational arithmetic
/// when the fixed-precision balls run out of digits.
pub fn f_point(p: u32, c: u32, rel: u32, x: &Q, y: &Q, z: &Q) -> Result<Support, PadicError> {
    let b = |v: &Q| PadicNum::from_rational(p, v, rel);
    match f_ball(p, c, rel, b(x), b(y), b(z)) {
        Err(PadicError::PrecisionExhausted) => f_exact(p, c, x, y, z),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::rat;
    use crate::whittaker::TorusReadout;

    #[test]
    fn long_weyl_value() {
        // F(0, 0, 0) = f(w): a = (ϖ^c, 1, ϖ^{-c}) after translating by u(0,0,ϖ^{-c}) ∈ K_c.
        let s = f_point(3, 1, 20, &rat(0, 1), &rat(0, 1), &rat(0, 1)).unwrap();
        assert_eq!(s, Support::Member(TorusReadout { v1: 1, v2: 0, v3: -1, a2_class: 1 }));
    }

    #[test]
    fn ball_certifies_constant_cells() {
        // Z in ϖ^{-3}(1 + 3o): F depends only on v(Z) here.
        let z = PadicNum::from_parts(3, -3, 1, 1).unwrap();
        let s = f_ball(3, 1, 20, PadicNum::zero(3), PadicNum::zero(3), z).unwrap();
        let e = f_exact(3, 1, &rat(0, 1), &rat(0, 1), &rat(-5, 27)).unwrap();
        assert_eq!(s, e);
    }
}
