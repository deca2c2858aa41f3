use std::fmt;

use serde::Serialize;

use crate::symalg::{rat, LaurentPoly};

use super::mat::Mat;

/// A root a·α + b·β, α short and β long.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root {
    pub a: i32,
    pub b: i32,
}

pub const ALPHA: Root = Root { a: 1, b: 0 };
pub const BETA: Root = Root { a: 0, b: 1 };

impl Root {
    pub const fn new(a: i32, b: i32) -> Root {
        Root { a, b }
    }

    pub fn is_positive(self) -> bool {
        self.a > 0 || (self.a == 0 && self.b > 0)
    }

    pub fn height(self) -> i32 {
        self.a + self.b
    }


    pub fn is_root(self) -> bool {
        RootDatum::g2().roots.contains(&self)
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |c: i32, s: &str| match c {
            0 => String::new(),
            1 => s.to_string(),
            -1 => format!("-{s}"),
            c => format!("{c}{s}"),
        };
        let (x, y) = (part(self.a, "α"), part(self.b, "β"));
        match (x.is_empty(), y.is_empty()) {
            (false, false) if self.b > 0 => write!(f, "{x}+{y}"),
            (false, false) => write!(f, "{x}{y}"),
            (true, _) => write!(f, "{y}"),
            (_, true) => write!(f, "{x}"),
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootDatum {
    pub roots: Vec<Root>,
}

impl RootDatum {
    pub fn g2() -> RootDatum {
        let pos = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)];
        let mut roots: Vec<Root> = pos.iter().map(|&(a, b)| Root::new(a, b)).collect();
        roots.extend(pos.iter().map(|&(a, b)| Root::new(-a, -b)));
        RootDatum { roots }
    }

    pub fn positive(&self) -> Vec<Root> {
        self.roots.iter().copied().filter(|r| r.is_positive()).collect()
    }
}

/// Root vector X_δ. The simple ones are fixed; α+β = [X_α, X_β], then
/// (k+1)α+β = [X_α, X_{kα+β}]/(k+1) and 3α+2β = [X_β, X_{3α+β}]. Every
/// entry is ±1 and X_{-δ} = ᵀX_δ, which makes [X_δ, X_{-δ}] the coroot.
pub fn root_vector(d: Root) -> Option<Mat> {
    if !d.is_root() {
        return None;
    }
    if !d.is_positive() {
        return root_vector(-d).map(|m| m.transpose());
    }
    let xa = Mat::units(8, &[(1, 2, 1), (3, 4, 1), (3, 5, 1), (4, 6, -1), (5, 6, -1), (7, 8, -1)]);
    let xb = Mat::units(8, &[(2, 3, 1), (6, 7, -1)]);
    let v = match (d.a, d.b) {
        (1, 0) => xa,
        (0, 1) => xb,
        (1, 1) => xa.bracket(&xb),
        (2, 1) => xa.bracket(&root_vector(Root::new(1, 1))?).scale_q(&rat(1, 2)),
        (3, 1) => xa.bracket(&root_vector(Root::new(2, 1))?).scale_q(&rat(1, 3)),
        (3, 2) => xb.bracket(&root_vector(Root::new(3, 1))?),
        _ => unreachable!("positive roots are enumerated"),
    };
    Some(v)
}

/// H_δ = [X_δ, X_{-δ}].
pub fn coroot(d: Root) -> Option<Mat> {
    Some(root_vector(d)?.bracket(&root_vector(-d)?))
}

/// The 14 basis vectors: root vectors in datum order, then H_α, H_β.
pub fn lie_basis() -> Vec<Mat> {
    let mut b: Vec<Mat> = RootDatum::g2().roots.iter().map(|&r| root_vector(r).expect("root")).collect();
    b.push(coroot(ALPHA).expect("root"));
    b.push(coroot(BETA).expect("root"));
    b
}

/// Coordinates of X in [`lie_basis`], or `None` if X is not in 𝔤2.
pub fn lie_coordinates(x: &Mat) -> Option<Vec<LaurentPoly>> {
    let basis = lie_basis();
    let mut coords = Vec::with_capacity(14);
    for v in &basis[..12] {
        // Root spaces occupy disjoint off-diagonal positions.
        let (i, j, c) = v.entries().find(|(i, j, c)| i != j && !c.is_zero()).expect("nonzero root vector");
        let c = c.as_constant().expect("integral root vector");
        coords.push(x.get(i, j).scale(&(rat(1, 1) / c)));
    }
    // Diagonal entries 2, 3 of x·H_α + y·H_β are (−x + y, 2x − y).
    let (d2, d3) = (x.get(1, 1), x.get(2, 2));
    coords.push(d2 + d3);
    coords.push(d2.scale(&rat(2, 1)) + d3);
    let mut rebuilt = Mat::zero(8);
    for (c, v) in coords.iter().zip(&basis) {
        rebuilt = &rebuilt + &v.scale(c);
    }
    (rebuilt == *x).then_some(coords)
}

impl std::ops::Neg for Root {
    type Output = Root;

    fn neg(self) -> Root {
        Root { a: -self.a, b: -self.b }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_roots_six_positive() {
        let d = RootDatum::g2();
        assert_eq!(d.roots.len(), 12);
        assert_eq!(d.positive().len(), 6);
        assert_eq!(format!("{:?}", Root::new(3, 2)), "3α+2β");
        assert_eq!(format!("{:?}", Root::new(-1, 0)), "-α");
    }

    #[test]
    fn coroots_pair_to_two() {
        for r in RootDatum::g2().roots {
            let (x, h) = (root_vector(r).unwrap(), coroot(r).unwrap());
            assert_eq!(h.bracket(&x), x.scale_q(&rat(2, 1)), "{r:?}");
        }
    }

    #[test]
    fn basis_is_closed_under_brackets() {
        let basis = lie_basis();
        for a in &basis {
            for b in &basis {
                assert!(lie_coordinates(&a.bracket(b)).is_some());
            }
        }
        assert!(lie_coordinates(&Mat::units(8, &[(1, 1, 1)])).is_none());
        assert!(root_vector(Root::new(1, 2)).is_none());
    }
}
