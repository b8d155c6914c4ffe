//! Restriction of a polynomial to one slice `C_J^n`.
//!
//! With `J' ⟂ J` and `K = J J'`, every quaternion decomposes uniquely as
//! `a = α + β J'` with `α, β ∈ C_J`. Since monomial values on `C_J^n` commute
//! with `C_J`, `P(z) = P'(z) + P''(z) J'`, and the zeros of `P` on the slice are
//! the common zeros of the two complex polynomials `P'` and `P''`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::CommutingPoint;
use crate::poly::SlicePoly;
use crate::quat::Quaternion;
use crate::rational::{rat, Rational};

/// An orthonormal pair of rational imaginary units.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "[Quaternion; 2]", into = "[Quaternion; 2]")]
pub struct SliceFrame {
    j: Quaternion,
    jp: Quaternion,
}

impl SliceFrame {
    pub fn new(j: Quaternion, jp: Quaternion) -> Result<Self> {
        for (name, u) in [("J", &j), ("J'", &jp)] {
            if u.re().is_zero() && u.norm_sq().is_one() {
                continue;
            }
            return Err(Error::InvalidFrame(format!("{name} = {u} is not a unit imaginary")));
        }
        if !j.im_dot(&jp).is_zero() {
            return Err(Error::InvalidFrame(format!("{j} and {jp} are not orthogonal")));
        }
        Ok(SliceFrame { j, jp })
    }

    pub fn j(&self) -> &Quaternion {
        &self.j
    }

    pub fn j_prime(&self) -> &Quaternion {
        &self.jp
    }

    /// `K = J J'`, completing the frame.
    pub fn k(&self) -> Quaternion {
        &self.j * &self.jp
    }

    /// `a -> (α, β)` with `a = α + β J'`; `α, β` are returned in `C_i`
    /// coordinates (`x + y i` stands for `x + y J`).
    pub fn decompose(&self, a: &Quaternion) -> (Quaternion, Quaternion) {
        let im = a.im();
        let alpha = Quaternion::new(a.re(), im.im_dot(&self.j), Rational::zero(), Rational::zero());
        let beta = Quaternion::new(
            im.im_dot(&self.jp),
            im.im_dot(&self.k()),
            Rational::zero(),
            Rational::zero(),
        );
        (alpha, beta)
    }

    /// Maps `x + y i` to `x + y J`.
    pub fn embed(&self, z: &Quaternion) -> Quaternion {
        &Quaternion::real(z.w.clone()) + &self.j.scale(&z.x)
    }

    /// Maps a complex tuple (in `C_i` coordinates) onto the slice.
    pub fn point(&self, zs: &[Quaternion]) -> CommutingPoint {
        let pairs: Vec<_> = zs.iter().map(|z| (z.w.clone(), z.x.clone())).collect();
        CommutingPoint::on_slice(&self.j, &pairs)
    }
}

impl TryFrom<[Quaternion; 2]> for SliceFrame {
    type Error = Error;
    fn try_from([j, jp]: [Quaternion; 2]) -> Result<Self> {
        SliceFrame::new(j, jp)
    }
}

impl From<SliceFrame> for [Quaternion; 2] {
    fn from(f: SliceFrame) -> Self {
        [f.j, f.jp]
    }
}

/// The built-in catalog of rational slices.
pub fn frame_catalog() -> Vec<SliceFrame> {
    let q = |w: Rational, x: Rational, y: Rational, z: Rational| Quaternion::new(w, x, y, z);
    let z = || rat(0, 1);
    let raw = [
        (Quaternion::i(), Quaternion::j()),
        (Quaternion::j(), Quaternion::k()),
        (Quaternion::k(), Quaternion::i()),
        (q(z(), rat(3, 5), rat(4, 5), z()), q(z(), rat(-4, 5), rat(3, 5), z())),
        (
            q(z(), rat(1, 3), rat(2, 3), rat(2, 3)),
            q(z(), rat(2, 3), rat(1, 3), rat(-2, 3)),
        ),
        (
            q(z(), rat(2, 3), rat(-2, 3), rat(1, 3)),
            q(z(), rat(1, 3), rat(2, 3), rat(2, 3)),
        ),
    ];
    raw.into_iter()
        .map(|(j, jp)| SliceFrame::new(j, jp).expect("catalog frame"))
        .collect()
}

/// `P -> (P', P'')` with `P|_{C_J^n} = P' + P'' J'`; both parts have
/// coefficients in `C_i`, standing for `C_J`.
pub fn slice_split(p: &SlicePoly, frame: &SliceFrame) -> (SlicePoly, SlicePoly) {
    let mut first = Vec::new();
    let mut second = Vec::new();
    for (e, c) in p.terms() {
        let (alpha, beta) = frame.decompose(c);
        first.push((e.clone(), alpha));
        second.push((e.clone(), beta));
    }
    (
        SlicePoly::from_terms(p.nvars(), first),
        SlicePoly::from_terms(p.nvars(), second),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_poly;

    #[test]
    fn catalog_is_valid() {
        for f in frame_catalog() {
            assert_eq!(f.k().norm_sq(), rat(1, 1));
            assert!(f.k().re() == rat(0, 1));
        }
        assert!(SliceFrame::new(Quaternion::i(), Quaternion::i()).is_err());
        assert!(SliceFrame::new(Quaternion::from_ints(0, 1, 1, 0), Quaternion::k()).is_err());
    }

    #[test]
    fn split_examples() {
        let f = SliceFrame::new(Quaternion::i(), Quaternion::j()).unwrap();
        let (a, b) = slice_split(&parse_poly("q^2 + 1", 1).unwrap(), &f);
        assert_eq!(a, parse_poly("q^2 + 1", 1).unwrap());
        assert!(b.is_zero());
        let (a, b) = slice_split(&parse_poly("q - j", 1).unwrap(), &f);
        assert_eq!(a, parse_poly("q", 1).unwrap());
        assert_eq!(b, parse_poly("-1", 1).unwrap());
    }

    #[test]
    fn reassembly_matches_evaluation() {
        let p = parse_poly("q1^2 (1 + 2i - k) + q1 q2 (3/2j) - q2 + 1/3k", 2).unwrap();
        for f in frame_catalog() {
            let (a, b) = slice_split(&p, &f);
            for (x, y) in [(1, 2), (-3, 1), (0, 5)] {
                let zs = [Quaternion::from_ints(x, y, 0, 0), Quaternion::from_ints(y, -x, 0, 0)];
                let pt: Vec<Quaternion> = zs.iter().map(|z| f.embed(z)).collect();
                let direct = p.eval(&pt).unwrap();
                let pa = f.embed(&a.eval(&zs).unwrap());
                let pb = f.embed(&b.eval(&zs).unwrap());
                assert_eq!(direct, &pa + &(&pb * f.j_prime()));
            }
        }
    }
}
