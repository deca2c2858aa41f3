use super::num::{PadicNum, Valuation};
use super::PadicError;

pub type Mat3 = [[PadicNum; 3]; 3];

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let p = a[0][0].prime();
    let mut out = [[PadicNum::zero(p); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut s = PadicNum::zero(p);
            for k in 0..3 {
                s = s.add(&a[i][k].mul(&b[k][j]));
            }
            out[i][j] = s;
        }
    }
    out
}

fn det(g: &Mat3) -> PadicNum {
    let t = |a: usize, b: usize, c: usize| g[0][a].mul(&g[1][b]).mul(&g[2][c]);
    t(0, 1, 2).add(&t(1, 2, 0)).add(&t(2, 0, 1)).sub(&t(0, 2, 1)).sub(&t(1, 0, 2)).sub(&t(2, 1, 0))
}

/// Minimal valuation of a row and the lowest index attaining it. Fails if an
/// unresolved entry could undercut the minimum.
fn pivot(row: &[PadicNum; 3]) -> Result<(i64, usize), PadicError> {
    let mut best: Option<(i64, usize)> = None;
    for (j, x) in row.iter().enumerate() {
        if let Valuation::Finite(v) = x.valuation().unwrap_or(Valuation::Infinite) {
            if best.is_none_or(|(b, _)| v < b) {
                best = Some((v, j));
            }
        }
    }
    let Some((v, j)) = best else {
        return Err(if row.iter().all(|x| x.is_exact_zero()) { PadicError::Singular } else { PadicError::PrecisionExhausted });
    };
    for x in row {
        if !x.is_resolved() && !x.is_exact_zero() && x.abs_precision().unwrap() <= v {
            return Err(PadicError::PrecisionExhausted);
        }
    }
    Ok((v, j))
}

fn is_integral_unimodular(g: &Mat3) -> Result<bool, PadicError> {
    for row in g {
        for x in row {
            if x.valuation_lower_bound() < Valuation::Finite(0) {
                return Ok(false);
            }
        }
    }
    Ok(det(g).valuation()? == Valuation::Finite(0))
}

/// g = b·k with b upper triangular, diagonal entries powers of ϖ, and
/// k ∈ GL3(o). Rows are processed bottom-up; pivots are the first entry of
/// minimal valuation.
pub fn iwasawa_gl3(g: &Mat3) -> Result<(Mat3, Mat3), PadicError> {
    let p = g[0][0].prime();
    let rel = g.iter().flatten().filter_map(|x| x.unit().map(|u| u.1)).max().unwrap_or(1);
    let zero = PadicNum::zero(p);
    let one = PadicNum::uniformizer_pow(p, 0, rel);
    let mut b = [[zero; 3]; 3];
    if is_integral_unimodular(g)? {
        for (i, row) in b.iter_mut().enumerate() {
            row[i] = one;
        }
        return Ok((b, *g));
    }
    let mut k = [[zero; 3]; 3];

    let (v3, j3) = pivot(&g[2])?;
    for j in 0..3 {
        k[2][j] = g[2][j].shift(-v3);
    }
    b[2][2] = PadicNum::uniformizer_pow(p, v3, rel);

    let y = g[1][j3].div(&k[2][j3])?;
    let mut r2 = [zero; 3];
    for j in 0..3 {
        r2[j] = if j == j3 { zero } else { g[1][j].sub(&y.mul(&k[2][j])) };
    }
    let (v2, j2) = pivot(&r2)?;
    for j in 0..3 {
        k[1][j] = r2[j].shift(-v2);
    }
    b[1][1] = PadicNum::uniformizer_pow(p, v2, rel);
    b[1][2] = y;

    let c3 = g[0][j3].div(&k[2][j3])?;
    let mut r1 = [zero; 3];
    for j in 0..3 {
        r1[j] = if j == j3 { zero } else { g[0][j].sub(&c3.mul(&k[2][j])) };
    }
    let c2 = r1[j2].div(&k[1][j2])?;
    for j in 0..3 {
        r1[j] = if j == j2 || j == j3 { zero } else { r1[j].sub(&c2.mul(&k[1][j])) };
    }
    let (v1, _) = pivot(&r1)?;
    for j in 0..3 {
        k[0][j] = r1[j].shift(-v1);
    }
    b[0][0] = PadicNum::uniformizer_pow(p, v1, rel);
    b[0][1] = c2;
    b[0][2] = c3;
    Ok((b, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::{rat, Q};

    fn m(p: u32, rows: [[Q; 3]; 3]) -> Mat3 {
        rows.map(|r| r.map(|x| PadicNum::from_rational(p, &x, 12)))
    }

    fn close(a: &Mat3, b: &Mat3) -> bool {
        a.iter().flatten().zip(b.iter().flatten()).all(|(x, y)| {
            let d = x.sub(y);
            d.is_exact_zero() || d.valuation_lower_bound() >= Valuation::Finite(8)
        })
    }

    #[test]
    fn integral_matrix_is_its_own_k() {
        let g = m(3, [[rat(1, 1), rat(2, 1), rat(0, 1)], [rat(3, 1), rat(1, 1), rat(1, 1)], [rat(0, 1), rat(6, 1), rat(1, 1)]]);
        let (b, k) = iwasawa_gl3(&g).unwrap();
        assert_eq!(k, g);
        assert!(close(&mat_mul(&b, &k), &g));
    }

    #[test]
    fn torus_element_is_its_own_b() {
        let z = rat(0, 1);
        let g = m(5, [[rat(5, 1), z.clone(), z.clone()], [z.clone(), rat(1, 1), z.clone()], [z.clone(), z.clone(), rat(1, 5)]]);
        let (b, k) = iwasawa_gl3(&g).unwrap();
        assert!(close(&b, &g));
        assert!(is_integral_unimodular(&k).unwrap());
    }

    #[test]
    fn weyl_times_unipotent_recombines() {
        let (o, z) = (rat(1, 1), rat(0, 1));
        // w·u(x, 0, z) = [[0,0,1],[0,1,0],[1,x,z]].
        let g = m(3, [[z.clone(), z.clone(), o.clone()], [z.clone(), o.clone(), z.clone()], [o, rat(1, 9), rat(-2, 27)]]);
        let (b, k) = iwasawa_gl3(&g).unwrap();
        assert!(is_integral_unimodular(&k).unwrap());
        for (i, row) in b.iter().enumerate() {
            assert!(row[..i].iter().all(|x| x.is_exact_zero()));
        }
        assert!(close(&mat_mul(&b, &k), &g));
    }

    #[test]
    fn unresolved_entries_exhaust_precision() {
        let s = PadicNum::small(3, 0);
        let one = PadicNum::from_int(3, 1, 4);
        let z = PadicNum::zero(3);
        let g = [[one, z, z], [z, one.shift(-1), z], [s, s, s]];
        assert_eq!(iwasawa_gl3(&g), Err(PadicError::PrecisionExhausted));
    }
}
