//! Helpers around arbitrary-precision rationals.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // fall back on a scaled division when numerator or denominator overflow f64
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
        let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
        let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
        n / d
    })
}

/// Parses `p`, `p/q` or a plain decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        if !fp.chars().all(|c| c.is_ascii_digit()) || !ip.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        if ip.is_empty() && fp.is_empty() {
            return None;
        }
        let digits = format!("{ip}{fp}");
        let n: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().ok()?
        };
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let r = Rational::new(n, d);
        return Some(if neg { -r } else { r });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rational::from_integer(n))
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued-fraction convergents).
pub fn rationalize(x: f64, max_den: u64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let neg = x < 0.0;
    let mut v = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e18 {
            break;
        }
        let a = a as u128;
        let p2 = a * p1 + p0;
        let q2 = a * q1 + q0;
        if q2 > max_den as u128 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = v - a as f64;
        if frac < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    let r = Rational::new(BigInt::from(p1), BigInt::from(q1));
    Some(if neg { -r } else { r })
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Writes `sqrt(s) = coeff * sqrt(radicand)` with a square-free integer radicand.
///
/// Trial division runs up to a fixed bound; a leftover cofactor that is not a
/// perfect square is kept in the radicand.
pub fn surd(s: &Rational) -> (Rational, BigInt) {
    assert!(!s.is_negative(), "surd of a negative rational");
    if s.is_zero() {
        return (Rational::zero(), BigInt::one());
    }
    // sqrt(p/q) = sqrt(p q) / q
    let q = s.denom().clone();
    let m = s.numer() * &q;
    let (outside, inside) = square_free_split(&m);
    (Rational::new(outside, q), inside)
}

fn square_free_split(m: &BigInt) -> (BigInt, BigInt) {
    let mut rest = m.abs();
    let mut outside = BigInt::one();
    let mut inside = BigInt::one();
    let mut p = BigInt::from(2u32);
    let bound = BigInt::from(1_000_000u32);
    while &p * &p <= rest && p <= bound {
        let mut e = 0u32;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            outside *= &p;
        }
        if e % 2 == 1 {
            inside *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if rest > BigInt::one() {
        let r = rest.sqrt();
        if &r * &r == rest {
            outside *= r;
        } else {
            inside *= rest;
        }
    }
    if m.sign() == Sign::Minus {
        inside = -inside;
    }
    (outside, inside)
}

/// Rational serialized as a decimal `p/q` string.
pub mod serde_rational {
    use super::{parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

pub mod serde_rational_vec {
    use super::{parse_rational, Rational};
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_rational("-0.25"), Some(rat(-1, 4)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        assert_eq!(rationalize(0.75, 1000), Some(rat(3, 4)));
        assert_eq!(rationalize(-2.0 / 3.0, 1000), Some(rat(-2, 3)));
        assert_eq!(rationalize(1.0 / 7.0 + 1e-14, 1000), Some(rat(1, 7)));
    }

    #[test]
    fn surd_normal_form() {
        assert_eq!(surd(&int(8)), (int(2), BigInt::from(2)));
        assert_eq!(surd(&rat(1, 2)), (rat(1, 2), BigInt::from(2)));
        assert_eq!(surd(&rat(9, 4)), (rat(3, 2), BigInt::one()));
        assert_eq!(sqrt_exact(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(sqrt_exact(&int(2)), None);
    }
}
