//! Points with commuting components and their spherical orbits.
//!
//! A tuple `(a1, ..., an)` with pairwise commuting components lies in a single
//! slice `C_J^n`: every non-real `a_k` has imaginary part parallel to a common
//! direction. Its orbit under simultaneous conjugation `a -> g^-1 a g` is the
//! arranged spherical set `S_a`, determined by the real parts `x_k` and the
//! signed imaginary magnitudes `y_k` up to a joint sign.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::SlicePoly;
use crate::quat::Quaternion;
use crate::rational::{int, sqrt_exact, surd, to_f64, Rational};

/// A point of `C_J^n` for some imaginary unit `J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Quaternion>", into = "Vec<Quaternion>")]
pub struct CommutingPoint {
    coords: Vec<Quaternion>,
}

/// Canonical slice data of a commuting point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonical {
    Real(Vec<Rational>),
    /// `a_k = x_k + t_k * direction`. `direction` is the imaginary part of the
    /// first non-real coordinate, rescaled to a unit when its length is
    /// rational; the first nonzero `t_k` is therefore positive.
    Slice {
        direction: Quaternion,
        pairs: Vec<(Rational, Rational)>,
    },
}

impl CommutingPoint {
    pub fn new(coords: Vec<Quaternion>) -> Result<Self> {
        for a in 0..coords.len() {
            for b in a + 1..coords.len() {
                if !coords[a].commutes(&coords[b]) {
                    return Err(Error::NonCommuting);
                }
            }
        }
        Ok(CommutingPoint { coords })
    }

    pub fn real(xs: &[Rational]) -> Self {
        CommutingPoint {
            coords: xs.iter().cloned().map(Quaternion::real).collect(),
        }
    }

    /// The point `(x_k + y_k J)` for a pure imaginary `unit` (not checked to be a unit).
    pub fn on_slice(unit: &Quaternion, pairs: &[(Rational, Rational)]) -> Self {
        let coords = pairs
            .iter()
            .map(|(x, y)| &Quaternion::real(x.clone()) + &unit.scale(y))
            .collect();
        CommutingPoint { coords }
    }

    pub fn coords(&self) -> &[Quaternion] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_real(&self) -> bool {
        self.coords.iter().all(Quaternion::is_real)
    }

    pub fn canonical(&self) -> Canonical {
        let Some(first) = self.coords.iter().find(|a| !a.is_real()) else {
            return Canonical::Real(self.coords.iter().map(Quaternion::re).collect());
        };
        let mut direction = first.im();
        if let Some(len) = sqrt_exact(&direction.im_norm_sq()) {
            direction = direction.scale(&len.recip());
        }
        let n2 = direction.im_norm_sq();
        let pairs = self
            .coords
            .iter()
            .map(|a| (a.re(), a.im_dot(&direction) / &n2))
            .collect();
        Canonical::Slice { direction, pairs }
    }

    /// `(l^-1 a1 l, ..., l^-1 an l)`.
    pub fn transport(&self, lambda: &Quaternion) -> Result<CommutingPoint> {
        let inv = lambda.inverse()?;
        let coords = self.coords.iter().map(|a| &(&inv * a) * lambda).collect();
        Ok(CommutingPoint { coords })
    }

    pub fn eval(&self, p: &SlicePoly) -> Result<Quaternion> {
        p.eval(&self.coords)
    }
}

impl TryFrom<Vec<Quaternion>> for CommutingPoint {
    type Error = Error;
    fn try_from(v: Vec<Quaternion>) -> Result<Self> {
        CommutingPoint::new(v)
    }
}

impl From<CommutingPoint> for Vec<Quaternion> {
    fn from(p: CommutingPoint) -> Self {
        p.coords
    }
}

impl fmt::Display for CommutingPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Transport of a commuting point by a nonzero quaternion.
pub fn transport_point(a: &CommutingPoint, lambda: &Quaternion) -> Result<CommutingPoint> {
    a.transport(lambda)
}

/// An arranged spherical set with rational real parts and imaginary
/// magnitudes `y_k * sqrt(radicand)` (radicand square-free).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArrangedOrbit {
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub x: Vec<Rational>,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub y: Vec<Rational>,
    #[serde(with = "serde_bigint")]
    pub radicand: BigInt,
}

mod serde_bigint {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Orbit of a commuting point: a real point is its own orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Orbit {
    Real(Vec<Rational>),
    Arranged(ArrangedOrbit),
}

impl ArrangedOrbit {
    /// Normalizes signs so that the first nonzero `y_k` is positive.
    pub fn new(x: Vec<Rational>, mut y: Vec<Rational>, radicand: BigInt) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Domain("orbit coordinate lengths differ".into()));
        }
        let Some(first) = y.iter().find(|v| !v.is_zero()) else {
            return Err(Error::Domain("all imaginary parts zero: this is a real point".into()));
        };
        if first.is_negative() {
            y.iter_mut().for_each(|v| *v = -v.clone());
        }
        if radicand <= BigInt::zero() {
            return Err(Error::Domain("radicand must be positive".into()));
        }
        Ok(ArrangedOrbit { x, y, radicand })
    }

    /// The univariate sphere `{x + J sqrt(y2)}`.
    pub fn sphere(x: Rational, y2: &Rational) -> Result<Self> {
        if !y2.is_positive() {
            return Err(Error::Domain("sphere needs a positive squared radius".into()));
        }
        let (c, r) = surd(y2);
        ArrangedOrbit::new(vec![x], vec![c], r)
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// `y_k^2` as an exact rational.
    pub fn y_squared(&self, k: usize) -> Rational {
        &self.y[k] * &self.y[k] * Rational::from_integer(self.radicand.clone())
    }

    pub fn y_f64(&self) -> Vec<f64> {
        let s = to_f64(&Rational::from_integer(self.radicand.clone())).sqrt();
        self.y.iter().map(|v| to_f64(v) * s).collect()
    }

    pub fn x_f64(&self) -> Vec<f64> {
        self.x.iter().map(to_f64).collect()
    }

    pub fn contains(&self, p: &CommutingPoint) -> bool {
        orbit_of(p) == Orbit::Arranged(self.clone())
    }

    /// The characteristic polynomial `q^2 - 2x q + (x^2 + y^2)` of coordinate `k`.
    pub fn characteristic(&self, k: usize, nvars: usize) -> SlicePoly {
        let x = &self.x[k];
        let mut e2 = vec![0; nvars];
        e2[k] = 2;
        let mut e1 = vec![0; nvars];
        e1[k] = 1;
        SlicePoly::from_terms(
            nvars,
            [
                (e2, Quaternion::one()),
                (e1, Quaternion::real(-(x * int(2)))),
                (vec![0; nvars], Quaternion::real(x * x + self.y_squared(k))),
            ],
        )
    }

    /// Rational points of the orbit, when they exist (they do not when the
    /// radicand is not a sum of three rational squares). Deterministic.
    pub fn rational_points(&self, count: usize) -> Vec<CommutingPoint> {
        let Some(base) = self.base_direction() else {
            return Vec::new();
        };
        let mut out: Vec<CommutingPoint> = Vec::new();
        'outer: for a in -2i64..=2 {
            for b in -2i64..=2 {
                for c in -1i64..=2 {
                    for d in 0i64..=2 {
                        if out.len() >= count {
                            break 'outer;
                        }
                        let g = Quaternion::from_ints(a, b, c, d);
                        let Ok(ginv) = g.inverse() else { continue };
                        let dir = &(&ginv * &base) * &g;
                        let pairs: Vec<_> = self.x.iter().cloned().zip(self.y.iter().cloned()).collect();
                        let p = CommutingPoint::on_slice(&dir, &pairs);
                        if !out.contains(&p) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    /// A rational imaginary quaternion of length `sqrt(radicand)`.
    fn base_direction(&self) -> Option<Quaternion> {
        if self.radicand.is_one() {
            return Some(Quaternion::i());
        }
        let r = Rational::from_integer(self.radicand.clone());
        for s in 1i64..=12 {
            let target = &r * int(s * s);
            let t: i64 = target.to_integer().try_into().ok()?;
            let lim = (t as f64).sqrt() as i64 + 1;
            for a in 0..=lim {
                for b in 0..=a {
                    let rest = t - a * a - b * b;
                    if rest < 0 {
                        break;
                    }
                    let c = (rest as f64).sqrt().round() as i64;
                    if c * c == rest {
                        return Some(Quaternion::from_ints(0, a, b, c).scale(&Rational::new(1.into(), s.into())));
                    }
                }
            }
        }
        None
    }
}

impl PartialOrd for ArrangedOrbit {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ArrangedOrbit {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.x, &self.radicand, &self.y).cmp(&(&other.x, &other.radicand, &other.y))
    }
}

impl fmt::Display for ArrangedOrbit {
    /// `S[(x1,y1),...,(xn,yn)]`, with `y_k` written as `c*sqrt(r)` when irrational.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .x
            .iter()
            .zip(&self.y)
            .map(|(x, y)| {
                if self.radicand.is_one() || y.is_zero() {
                    format!("({x},{y})")
                } else {
                    format!("({x},{y}*sqrt({}))", self.radicand)
                }
            })
            .collect();
        write!(f, "S[{}]", parts.join(","))
    }
}

/// The spherical orbit of a commuting point.
pub fn orbit_of(p: &CommutingPoint) -> Orbit {
    match p.canonical() {
        Canonical::Real(xs) => Orbit::Real(xs),
        Canonical::Slice { direction, pairs } => {
            let (c, r) = surd(&direction.im_norm_sq());
            let x = pairs.iter().map(|(x, _)| x.clone()).collect();
            let y = pairs.iter().map(|(_, t)| t * &c).collect();
            Orbit::Arranged(ArrangedOrbit::new(x, y, r).expect("non-real canonical point"))
        }
    }
}

/// `a + b sqrt(r)`.
#[derive(Clone, Debug)]
struct Surd {
    a: Rational,
    b: Rational,
}

impl Surd {
    fn mul(&self, o: &Surd, r: &Rational) -> Surd {
        Surd {
            a: &self.a * &o.a + &self.b * &o.b * r,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    fn add(&self, o: &Surd) -> Surd {
        Surd {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }

    fn sub(&self, o: &Surd) -> Surd {
        Surd {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

/// `re + im * iota` over `Q(sqrt r)`.
#[derive(Clone, Debug)]
struct SurdComplex {
    re: Surd,
    im: Surd,
}

impl SurdComplex {
    fn one() -> Self {
        SurdComplex {
            re: Surd {
                a: Rational::one(),
                b: Rational::zero(),
            },
            im: Surd {
                a: Rational::zero(),
                b: Rational::zero(),
            },
        }
    }

    fn mul(&self, o: &SurdComplex, r: &Rational) -> SurdComplex {
        SurdComplex {
            re: self.re.mul(&o.re, r).sub(&self.im.mul(&o.im, r)),
            im: self.re.mul(&o.im, r).add(&self.im.mul(&o.re, r)),
        }
    }
}

/// Decides exactly whether `P` vanishes on the whole orbit.
///
/// On a slice point `q_k = x_k + y_k J` every monomial value is a complex
/// number `A + B J` in `C_J`, so `P = U + J V` with quaternions `U, V`
/// independent of `J`. Writing `J = b i + c j + d k` and reducing modulo
/// `b^2 + c^2 + d^2 = 1` leaves exactly this affine form in `J`; it vanishes
/// for every `J` iff `U = V = 0`.
pub fn orbit_vanishing_check(p: &SlicePoly, orbit: &Orbit) -> bool {
    match orbit {
        Orbit::Real(xs) => {
            let pt: Vec<Quaternion> = xs.iter().cloned().map(Quaternion::real).collect();
            p.eval(&pt).map(|v| v.is_zero()).unwrap_or(false)
        }
        Orbit::Arranged(o) => {
            if p.nvars() != o.dim() {
                return false;
            }
            let (u, v) = split_on_orbit(p, o);
            u.iter().all(Quaternion::is_zero) && v.iter().all(Quaternion::is_zero)
        }
    }
}

/// Returns `(U0, U1)` and `(V0, V1)` flattened: `U = U0 + sqrt(r) U1`.
fn split_on_orbit(p: &SlicePoly, o: &ArrangedOrbit) -> ([Quaternion; 2], [Quaternion; 2]) {
    let r = Rational::from_integer(o.radicand.clone());
    let zero = Rational::zero;
    let mut powers: Vec<Vec<SurdComplex>> = Vec::new();
    for k in 0..o.dim() {
        let z = SurdComplex {
            re: Surd {
                a: o.x[k].clone(),
                b: zero(),
            },
            im: Surd {
                a: zero(),
                b: o.y[k].clone(),
            },
        };
        let mut v = vec![SurdComplex::one()];
        for l in 1..=p.degree_in(k) as usize {
            let next = v[l - 1].mul(&z, &r);
            v.push(next);
        }
        powers.push(v);
    }
    let mut u = [Quaternion::zero(), Quaternion::zero()];
    let mut w = [Quaternion::zero(), Quaternion::zero()];
    for (e, c) in p.terms() {
        let mut m = SurdComplex::one();
        for (k, l) in e.iter().enumerate() {
            if *l > 0 {
                m = m.mul(&powers[k][*l as usize], &r);
            }
        }
        u[0] += &c.scale(&m.re.a);
        u[1] += &c.scale(&m.re.b);
        w[0] += &c.scale(&m.im.a);
        w[1] += &c.scale(&m.im.b);
    }
    if o.radicand.is_one() {
        let u0 = &u[0] + &u[1];
        let w0 = &w[0] + &w[1];
        return ([u0, Quaternion::zero()], [w0, Quaternion::zero()]);
    }
    (u, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_poly;

    fn q(w: i64, x: i64, y: i64, z: i64) -> Quaternion {
        Quaternion::from_ints(w, x, y, z)
    }

    fn orbit(p: &[Quaternion]) -> Orbit {
        orbit_of(&CommutingPoint::new(p.to_vec()).unwrap())
    }

    #[test]
    fn canonical_forms() {
        let p = CommutingPoint::new(vec![q(0, 1, 0, 0), q(-1, 2, 0, 0)]).unwrap();
        assert_eq!(
            p.canonical(),
            Canonical::Slice {
                direction: q(0, 1, 0, 0),
                pairs: vec![(int(0), int(1)), (int(-1), int(2))]
            }
        );
        assert_eq!(
            CommutingPoint::new(vec![q(0, 1, 0, 0), q(0, 0, 1, 0)]),
            Err(Error::NonCommuting)
        );
        let r = CommutingPoint::new(vec![q(3, 0, 0, 0), Quaternion::real(Rational::new(1.into(), 2.into()))]).unwrap();
        assert!(matches!(r.canonical(), Canonical::Real(_)));
    }

    #[test]
    fn transport_examples() {
        let ii = CommutingPoint::new(vec![q(0, 1, 0, 0), q(0, 1, 0, 0)]).unwrap();
        assert_eq!(transport_point(&ii, &Quaternion::one()).unwrap(), ii);
        let a = CommutingPoint::new(vec![q(0, 1, 0, 0), q(0, 2, 0, 0)]).unwrap();
        let moved = transport_point(&a, &Quaternion::j()).unwrap();
        assert_eq!(moved.coords(), &[q(0, -1, 0, 0), q(0, -2, 0, 0)]);
        assert!(transport_point(&a, &Quaternion::zero()).is_err());
    }

    #[test]
    fn orbit_examples() {
        let neg_pos = orbit(&[q(0, -1, 0, 0), q(0, 1, 0, 0)]);
        assert_eq!(
            neg_pos,
            Orbit::Arranged(ArrangedOrbit::new(vec![int(0), int(0)], vec![int(1), int(-1)], BigInt::one()).unwrap())
        );
        let ii = orbit(&[q(0, 1, 0, 0), q(0, 1, 0, 0)]);
        assert_eq!(ii, orbit(&[q(0, -1, 0, 0), q(0, -1, 0, 0)]));
        assert_ne!(ii, neg_pos);
        // J = (i + j + k)/sqrt(3) direction keeps an irrational radius
        let o = orbit(&[q(1, 1, 1, 1)]);
        let Orbit::Arranged(o) = o else { panic!() };
        assert_eq!(o.radicand, BigInt::from(3));
        assert_eq!(o.y_squared(0), int(3));
    }

    #[test]
    fn orbit_vanishing_examples() {
        let s_i = Orbit::Arranged(ArrangedOrbit::sphere(int(0), &int(1)).unwrap());
        assert!(orbit_vanishing_check(&parse_poly("q^2 + 1", 1).unwrap(), &s_i));
        assert!(!orbit_vanishing_check(&parse_poly("q - i", 1).unwrap(), &s_i));
        let ii = orbit(&[q(0, 1, 0, 0), q(0, 1, 0, 0)]);
        let p = parse_poly("q1^2 - q2^2", 2).unwrap();
        assert!(orbit_vanishing_check(&p, &ii));
        let Orbit::Arranged(o) = &ii else { panic!() };
        let pts = o.rational_points(5);
        assert_eq!(pts.len(), 5);
        for pt in pts {
            assert!(o.contains(&pt));
            assert!(pt.eval(&p).unwrap().is_zero());
        }
        // q1 - q2 vanishes on S_(i,i) but not on S_(-i,i)
        let lin = parse_poly("q1 - q2", 2).unwrap();
        assert!(orbit_vanishing_check(&lin, &ii));
        assert!(!orbit_vanishing_check(&lin, &orbit(&[q(0, -1, 0, 0), q(0, 1, 0, 0)])));
    }

    #[test]
    fn irrational_sphere_points() {
        let s = ArrangedOrbit::sphere(int(1), &int(2)).unwrap();
        let pts = s.rational_points(4);
        assert_eq!(pts.len(), 4);
        let c = s.characteristic(0, 1);
        for pt in &pts {
            assert!(pt.eval(&c).unwrap().is_zero());
        }
        assert!(orbit_vanishing_check(&c, &Orbit::Arranged(s.clone())));
        // radicand 7 has no rational points
        assert!(ArrangedOrbit::sphere(int(0), &int(7))
            .unwrap()
            .rational_points(3)
            .is_empty());
    }
}
