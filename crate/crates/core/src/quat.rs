//! Exact rational quaternions.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{int, parse_rational, to_f64, Rational};

/// A quaternion `w + x i + y j + z k` with exact rational components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quaternion {
    pub w: Rational,
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Quaternion {
    pub fn new(w: Rational, x: Rational, y: Rational, z: Rational) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        Quaternion::new(int(w), int(x), int(y), int(z))
    }

    pub fn real(r: Rational) -> Self {
        Quaternion::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn zero() -> Self {
        Quaternion::new(Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Quaternion::real(Rational::one())
    }

    pub fn i() -> Self {
        Quaternion::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Quaternion::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Quaternion::from_ints(0, 0, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.is_real_im_zero()
    }

    fn is_real_im_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.w.is_one() && self.is_real_im_zero()
    }

    pub fn is_real(&self) -> bool {
        self.is_real_im_zero()
    }

    /// `Re(q)`.
    pub fn re(&self) -> Rational {
        self.w.clone()
    }

    /// `Im(q)` as a pure imaginary quaternion.
    pub fn im(&self) -> Quaternion {
        Quaternion::new(Rational::zero(), self.x.clone(), self.y.clone(), self.z.clone())
    }

    pub fn conj(&self) -> Quaternion {
        Quaternion::new(self.w.clone(), -&self.x, -&self.y, -&self.z)
    }

    /// `|q|^2 = conj(q) q`.
    pub fn norm_sq(&self) -> Rational {
        &self.w * &self.w + &self.x * &self.x + &self.y * &self.y + &self.z * &self.z
    }

    /// `|Im(q)|^2`.
    pub fn im_norm_sq(&self) -> Rational {
        &self.x * &self.x + &self.y * &self.y + &self.z * &self.z
    }

    pub fn inverse(&self) -> Result<Quaternion> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of the zero quaternion".into()));
        }
        let n = self.norm_sq();
        Ok(self.conj().scale(&n.recip()))
    }

    pub fn scale(&self, r: &Rational) -> Quaternion {
        Quaternion::new(&self.w * r, &self.x * r, &self.y * r, &self.z * r)
    }

    /// `b` lies on the sphere `S_a`: same real part and same `|Im|`.
    pub fn similar(&self, other: &Quaternion) -> bool {
        self.w == other.w && self.im_norm_sq() == other.im_norm_sq()
    }

    pub fn commutes(&self, other: &Quaternion) -> bool {
        self * other == other * self
    }

    /// Cross product of the imaginary parts, as a pure imaginary quaternion.
    pub fn im_cross(&self, other: &Quaternion) -> Quaternion {
        Quaternion::new(
            Rational::zero(),
            &self.y * &other.z - &self.z * &other.y,
            &self.z * &other.x - &self.x * &other.z,
            &self.x * &other.y - &self.y * &other.x,
        )
    }

    /// Euclidean inner product of the imaginary parts.
    pub fn im_dot(&self, other: &Quaternion) -> Rational {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn pow(&self, e: u32) -> Quaternion {
        let mut acc = Quaternion::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn components(&self) -> [&Rational; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [to_f64(&self.w), to_f64(&self.x), to_f64(&self.y), to_f64(&self.z)]
    }

    /// A rational point of the unit sphere of imaginary units, from the
    /// Pythagorean-quadruple parametrization of `(m, n, p, q) != 0`.
    pub fn unit_imaginary(m: i64, n: i64, p: i64, q: i64) -> Quaternion {
        let d = m * m + n * n + p * p + q * q;
        assert!(d != 0, "degenerate sphere parameter");
        let d = int(d);
        Quaternion::new(
            Rational::zero(),
            int(m * m + n * n - p * p - q * q) / &d,
            int(2 * (m * q + n * p)) / &d,
            int(2 * (n * q - m * p)) / &d,
        )
    }

    /// Parses the text form `w + x i + y j + z k` (any arrangement of signed
    /// rational multiples of `1, i, j, k`).
    pub fn parse(s: &str) -> Result<Quaternion> {
        let p = crate::syntax::parse_poly(s, 1)?;
        p.as_constant().ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("not a quaternion constant: {s:?}"),
        })
    }
}

impl<'a> Add<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn add(self, o: &Quaternion) -> Quaternion {
        Quaternion::new(&self.w + &o.w, &self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }
}

impl<'a> Sub<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn sub(self, o: &Quaternion) -> Quaternion {
        Quaternion::new(&self.w - &o.w, &self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }
}

// Hamilton product: ij = k, jk = i, ki = j.
impl<'a> Mul<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn mul(self, o: &Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (&self.w, &self.x, &self.y, &self.z);
        let (a2, b2, c2, d2) = (&o.w, &o.x, &o.y, &o.z);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        &self + &o
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        &self - &o
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        &self * &o
    }
}

impl AddAssign<&Quaternion> for Quaternion {
    fn add_assign(&mut self, o: &Quaternion) {
        self.w += &o.w;
        self.x += &o.x;
        self.y += &o.y;
        self.z += &o.z;
    }
}

impl SubAssign<&Quaternion> for Quaternion {
    fn sub_assign(&mut self, o: &Quaternion) {
        self.w -= &o.w;
        self.x -= &o.x;
        self.y -= &o.y;
        self.z -= &o.z;
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.w, -&self.x, -&self.y, -&self.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        -&self
    }
}

impl From<Rational> for Quaternion {
    fn from(r: Rational) -> Self {
        Quaternion::real(r)
    }
}

impl From<i64> for Quaternion {
    fn from(n: i64) -> Self {
        Quaternion::real(int(n))
    }
}

/// Writes one signed component. `first` controls whether a leading `+` is
/// dropped.
pub(crate) fn write_component(f: &mut impl fmt::Write, c: &Rational, unit: &str, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    if unit.is_empty() || !mag.is_one() {
        write!(f, "{mag}")?;
    }
    f.write_str(unit)
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (c, unit) in [(&self.w, ""), (&self.x, "i"), (&self.y, "j"), (&self.z, "k")] {
            if !c.is_zero() {
                write_component(f, c, unit, first)?;
                first = false;
            }
        }
        Ok(())
    }
}

/// JSON form: an array of four exact rational strings.
impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [
            self.w.to_string(),
            self.x.to_string(),
            self.y.to_string(),
            self.z.to_string(),
        ]
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = <[String; 4]>::deserialize(d)?;
        let mut vals = Vec::with_capacity(4);
        for p in &parts {
            vals.push(parse_rational(p).ok_or_else(|| serde::de::Error::custom(format!("bad rational {p:?}")))?);
        }
        let z = vals.pop().unwrap();
        let y = vals.pop().unwrap();
        let x = vals.pop().unwrap();
        let w = vals.pop().unwrap();
        Ok(Quaternion::new(w, x, y, z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn hamilton_table() {
        let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&i * &i, Quaternion::from(-1));
    }

    #[test]
    fn inverse_of_one_plus_j() {
        let a = Quaternion::from_ints(1, 0, 1, 0);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, Quaternion::new(rat(1, 2), int(0), rat(-1, 2), int(0)));
        assert_eq!(&a * &inv, Quaternion::one());
        assert!(Quaternion::zero().inverse().is_err());
    }

    #[test]
    fn conj_and_norm() {
        let a = Quaternion::from_ints(2, 3, -1, 0);
        assert_eq!(a.conj(), Quaternion::from_ints(2, -3, 1, 0));
        assert_eq!(a.norm_sq(), int(14));
        assert_eq!(&a.conj() * &a, Quaternion::from(14));
    }

    #[test]
    fn similarity_examples() {
        let (i, j) = (Quaternion::i(), Quaternion::j());
        assert!(i.similar(&j));
        assert!(i.similar(&-&i));
        assert!(!Quaternion::from_ints(1, 1, 0, 0).similar(&i));
    }

    #[test]
    fn commutation_examples() {
        let i = Quaternion::i();
        assert!(i.commutes(&Quaternion::from_ints(2, -3, 0, 0)));
        assert!(!i.commutes(&Quaternion::j()));
        assert!(Quaternion::from(5).commutes(&Quaternion::j()));
    }

    #[test]
    fn unit_imaginaries_are_units() {
        for (m, n, p, q) in [(1, 0, 0, 0), (1, 2, 3, 4), (0, 1, -1, 2), (2, -1, 0, 3)] {
            let u = Quaternion::unit_imaginary(m, n, p, q);
            assert_eq!(&u * &u, Quaternion::from(-1));
        }
    }

    #[test]
    fn display_text_form() {
        assert_eq!(Quaternion::from_ints(2, -3, 1, 0).to_string(), "2 - 3i + j");
        assert_eq!(
            Quaternion::new(int(0), rat(3, 5), int(0), int(-1)).to_string(),
            "3/5i - k"
        );
        assert_eq!(Quaternion::zero().to_string(), "0");
    }

    #[test]
    fn json_form() {
        let a = Quaternion::new(rat(1, 2), int(0), int(-3), rat(7, 3));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"["1/2","0","-3","7/3"]"#);
        let b: Quaternion = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
