//! One-variable polynomials: right division, generators of right ideals,
//! and the zero structure (isolated roots and spheres).

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::numeric::{self, qadd, qinv, qmul, qnorm, qscale, Quat64};
use crate::point::{orbit_vanishing_check, ArrangedOrbit, Orbit};
use crate::poly::SlicePoly;
use crate::quat::Quaternion;
use crate::rational::{int, rationalize, to_f64, Rational};

/// Tolerance on residuals of numeric roots.
pub const NUMERIC_TOL: f64 = 1e-12;

fn check_univariate(p: &SlicePoly) -> Result<()> {
    if p.nvars() != 1 {
        return Err(Error::Domain(format!(
            "expected a polynomial in one variable, got {} variables",
            p.nvars()
        )));
    }
    Ok(())
}

/// Ascending coefficient list.
pub fn coefficients(p: &SlicePoly) -> Vec<Quaternion> {
    let d = p.degree().unwrap_or(0) as usize;
    (0..=d).map(|l| p.coeff(&[l as u32])).collect()
}

fn lead(p: &SlicePoly) -> (u32, Quaternion) {
    let d = p.degree().expect("nonzero polynomial");
    (d, p.coeff(&[d]))
}

/// `P = D * Q + R` with `deg R < deg D`.
pub fn right_divide(p: &SlicePoly, d: &SlicePoly) -> Result<(SlicePoly, SlicePoly)> {
    check_univariate(p)?;
    check_univariate(d)?;
    if d.is_zero() {
        return Err(Error::Domain("division by the zero polynomial".into()));
    }
    let (dd, dl) = lead(d);
    let dl_inv = dl.inverse()?;
    let mut r = p.clone();
    let mut q = SlicePoly::zero(1);
    while let Some(rd) = r.degree() {
        if r.is_zero() || rd < dd {
            break;
        }
        let c = &dl_inv * &r.coeff(&[rd]);
        let shift = [rd - dd];
        r = &r - &d.mul_monomial(&shift, &c);
        q = &q + &SlicePoly::monomial(1, shift.to_vec(), c);
    }
    Ok((q, r))
}

/// Monic generator of the right ideal `<A, B>`.
pub fn gcd(a: &SlicePoly, b: &SlicePoly) -> Result<SlicePoly> {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = right_divide(&x, &y)?;
        x = y;
        y = r;
    }
    monic(&x)
}

/// Right-scales to leading coefficient 1; the zero polynomial stays zero.
pub fn monic(p: &SlicePoly) -> Result<SlicePoly> {
    if p.is_zero() {
        return Ok(p.clone());
    }
    let (_, l) = lead(p);
    Ok(p.mul_right(&l.inverse()?))
}

/// Square-free decomposition of a polynomial with coefficients in a
/// commutative subfield (real or `C_i`): `f = c * prod a_m^m`.
pub fn square_free(f: &SlicePoly) -> Result<Vec<(SlicePoly, u32)>> {
    check_univariate(f)?;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let df = f.derivative(0);
    let a0 = gcd(f, &df)?;
    let mut b = right_divide(f, &a0)?.0;
    let c = right_divide(&df, &a0)?.0;
    let mut d = &c - &b.derivative(0);
    let mut m = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = gcd(&b, &d)?;
        let next_b = right_divide(&b, &a)?.0;
        let c = right_divide(&d, &a)?.0;
        d = &c - &next_b.derivative(0);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, m));
        }
        b = next_b;
        m += 1;
    }
    Ok(out)
}

fn to_complex_coeffs(p: &SlicePoly) -> Vec<Complex64> {
    coefficients(p)
        .iter()
        .map(|c| Complex64::new(to_f64(&c.w), to_f64(&c.x)))
        .collect()
}

fn recognize(x: f64, check: impl Fn(&Rational) -> bool) -> Option<Rational> {
    for den in [1u64, 100, 10_000, 1_000_000, 100_000_000] {
        if let Some(r) = rationalize(x, den) {
            if check(&r) {
                return Some(r);
            }
        }
    }
    None
}

/// Exact factors of a real-coefficient polynomial that were recognized,
/// plus roots left numeric.
#[derive(Clone, Debug, Default)]
pub struct RealFactors {
    /// Rational roots with multiplicity.
    pub linear: Vec<(Rational, u32)>,
    /// Irreducible `q^2 - 2x q + (x^2 + y2)` as `(x, y2)` with multiplicity.
    pub quadratic: Vec<(Rational, Rational, u32)>,
    /// Remaining roots: real ones, and one of each conjugate pair (`im > 0`).
    pub numeric: Vec<(Complex64, u32)>,
}

pub fn real_factors(s: &SlicePoly) -> Result<RealFactors> {
    if !s.is_real() {
        return Err(Error::Domain("real factorization needs real coefficients".into()));
    }
    let mut out = RealFactors::default();
    for (part, m) in square_free(s)? {
        let mut rest = part;
        let approx = numeric::complex_roots(&to_complex_coeffs(&rest));
        for z in approx {
            if z.im.abs() <= 1e-9 * (1.0 + z.re.abs()) {
                let found = recognize(z.re, |r| {
                    rest.eval(&[Quaternion::real(r.clone())]).is_ok_and(|v| v.is_zero())
                });
                match found {
                    Some(r) => {
                        let lin = SlicePoly::univariate([Quaternion::real(-r.clone()), Quaternion::one()]);
                        rest = right_divide(&rest, &lin)?.0;
                        out.linear.push((r, m));
                    }
                    None => out.numeric.push((Complex64::new(z.re, 0.0), m)),
                }
            } else if z.im > 0.0 {
                let b = -2.0 * z.re;
                let c = z.norm_sqr();
                let quad = |b: &Rational, c: &Rational| {
                    SlicePoly::univariate([
                        Quaternion::real(c.clone()),
                        Quaternion::real(b.clone()),
                        Quaternion::one(),
                    ])
                };
                let divides = |f: &SlicePoly, b: &Rational, c: &Rational| {
                    right_divide(f, &quad(b, c)).is_ok_and(|(_, r)| r.is_zero())
                };
                let found = recognize(b, |br| recognize(c, |cr| divides(&rest, br, cr)).is_some())
                    .and_then(|br| recognize(c, |cr| divides(&rest, &br, cr)).map(|cr| (br, cr)));
                match found {
                    Some((br, cr)) => {
                        rest = right_divide(&rest, &quad(&br, &cr))?.0;
                        let x = -&br / int(2);
                        let y2 = &cr - &x * &x;
                        out.quadratic.push((x, y2, m));
                    }
                    None => out.numeric.push((z, m)),
                }
            }
        }
    }
    out.linear.sort();
    out.quadratic.sort();
    Ok(out)
}

/// A root of a complex-coefficient polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum ComplexRoot {
    /// Gaussian rational, as an element of `C_i`.
    Exact(Quaternion),
    Approx(Complex64),
}

/// Distinct roots of a polynomial whose coefficients lie in `C_i`.
pub fn complex_roots(f: &SlicePoly) -> Result<Vec<ComplexRoot>> {
    check_univariate(f)?;
    if f.is_zero() {
        return Err(Error::Domain("the zero polynomial vanishes everywhere".into()));
    }
    if coefficients(f).iter().any(|c| !c.y.is_zero() || !c.z.is_zero()) {
        return Err(Error::Domain("coefficients must lie in C_i".into()));
    }
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let g = gcd(f, &f.derivative(0))?;
    let mut rest = right_divide(f, &g)?.0;
    let mut out = Vec::new();
    for z in numeric::complex_roots(&to_complex_coeffs(&rest)) {
        let vanishes = |re: &Rational, im: &Rational| {
            let q = Quaternion::new(re.clone(), im.clone(), Rational::zero(), Rational::zero());
            rest.eval(&[q]).is_ok_and(|v| v.is_zero())
        };
        let found = recognize(z.re, |re| recognize(z.im, |im| vanishes(re, im)).is_some())
            .and_then(|re| recognize(z.im, |im| vanishes(&re, im)).map(|im| (re, im)));
        match found {
            Some((re, im)) => {
                let q = Quaternion::new(re, im, Rational::zero(), Rational::zero());
                let lin = SlicePoly::univariate([-q.clone(), Quaternion::one()]);
                rest = right_divide(&rest, &lin)?.0;
                out.push(ComplexRoot::Exact(q));
            }
            None => out.push(ComplexRoot::Approx(z)),
        }
    }
    Ok(out)
}

/// Exact or floating-point scalar.
#[derive(Clone, Debug, PartialEq)]
pub enum Num {
    Exact(Rational),
    Approx(f64),
}

impl Num {
    pub fn to_f64(&self) -> f64 {
        match self {
            Num::Exact(r) => to_f64(r),
            Num::Approx(v) => *v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Num::Exact(_))
    }

    fn to_json(&self) -> Value {
        match self {
            Num::Exact(r) => json!(r.to_string()),
            Num::Approx(v) => json!(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RootValue {
    Exact(Quaternion),
    Approx(Quat64),
}

impl RootValue {
    pub fn to_f64(&self) -> Quat64 {
        match self {
            RootValue::Exact(q) => q.to_f64(),
            RootValue::Approx(v) => *v,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsolatedRoot {
    pub value: RootValue,
    /// `|P(a)|`; zero for exact roots.
    pub residual: f64,
    pub multiplicity: u32,
}

/// A sphere `{x + J sqrt(y2)}` on which the polynomial vanishes identically.
#[derive(Clone, Debug, PartialEq)]
pub struct Sphere {
    pub x: Num,
    pub y2: Num,
    pub multiplicity: u32,
}

impl Sphere {
    pub fn is_exact(&self) -> bool {
        self.x.is_exact() && self.y2.is_exact()
    }

    pub fn orbit(&self) -> Option<ArrangedOrbit> {
        match (&self.x, &self.y2) {
            (Num::Exact(x), Num::Exact(y2)) => ArrangedOrbit::sphere(x.clone(), y2).ok(),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct UnivarZeroSet {
    pub isolated: Vec<IsolatedRoot>,
    pub spheres: Vec<Sphere>,
}

impl UnivarZeroSet {
    pub fn is_exact(&self) -> bool {
        self.isolated.iter().all(|r| matches!(r.value, RootValue::Exact(_)))
            && self.spheres.iter().all(Sphere::is_exact)
    }

    pub fn to_json(&self) -> Value {
        let isolated: Vec<Value> = self
            .isolated
            .iter()
            .map(|r| match &r.value {
                RootValue::Exact(q) => json!({
                    "value": q, "exact": true, "residual": 0.0, "multiplicity": r.multiplicity
                }),
                RootValue::Approx(v) => json!({
                    "value": v, "exact": false, "residual": r.residual, "multiplicity": r.multiplicity
                }),
            })
            .collect();
        let spheres: Vec<Value> = self
            .spheres
            .iter()
            .map(|s| {
                json!({
                    "x": s.x.to_json(), "y2": s.y2.to_json(),
                    "multiplicity": s.multiplicity, "exact": s.is_exact()
                })
            })
            .collect();
        json!({ "isolated": isolated, "spheres": spheres })
    }
}

/// `P(x + yJ) = U + yJ V` with `y^2 = s`, for quaternions `U, V` independent of `J`.
fn sphere_parts(p: &SlicePoly, x: &Rational, s: &Rational) -> (Quaternion, Quaternion) {
    let (mut a, mut b) = (Rational::one(), Rational::zero());
    let (mut u, mut v) = (Quaternion::zero(), Quaternion::zero());
    for c in coefficients(p) {
        u += &c.scale(&a);
        v += &c.scale(&b);
        let next_a = &a * x - s * &b;
        b = &a + &b * x;
        a = next_a;
    }
    (u, v)
}

fn sphere_parts_f64(p: &SlicePoly, x: f64, s: f64) -> (Quat64, Quat64) {
    let (mut a, mut b) = (1.0, 0.0);
    let (mut u, mut v) = ([0.0; 4], [0.0; 4]);
    for c in coefficients(p) {
        let c = c.to_f64();
        u = qadd(&u, &qscale(&c, a));
        v = qadd(&v, &qscale(&c, b));
        let next_a = a * x - s * b;
        b = a + b * x;
        a = next_a;
    }
    (u, v)
}

/// `|P(a)|` in floating point.
pub fn residual(p: &SlicePoly, a: &Quat64) -> f64 {
    let mut acc = [0.0; 4];
    let mut pw = [1.0, 0.0, 0.0, 0.0];
    for c in coefficients(p) {
        acc = qadd(&acc, &qmul(&pw, &c.to_f64()));
        pw = qmul(&pw, a);
    }
    qnorm(&acc)
}

/// Does `P` vanish on the whole sphere `(x, y2)`? Decided exactly.
pub fn vanishes_on_sphere(p: &SlicePoly, x: &Rational, y2: &Rational) -> bool {
    let (u, v) = sphere_parts(p, x, y2);
    u.is_zero() && v.is_zero()
}

/// Zero structure of a nonzero polynomial in one variable.
///
/// The roots of `P` lie on the spheres and real points cut out by `P^s`: a
/// real root of `P^s` is a root of `P`; on a sphere `x + yJ` either `P` vanishes
/// identically or it has the single root `x - U V^-1`.
pub fn roots(p: &SlicePoly) -> Result<UnivarZeroSet> {
    check_univariate(p)?;
    if p.is_zero() {
        return Err(Error::Domain("the zero polynomial vanishes everywhere".into()));
    }
    let s = p.symmetrization();
    let f = real_factors(&s)?;
    let mut out = UnivarZeroSet::default();
    for (r, m) in f.linear {
        let a = Quaternion::real(r);
        debug_assert!(p.eval(std::slice::from_ref(&a))?.is_zero());
        out.isolated.push(IsolatedRoot {
            value: RootValue::Exact(a),
            residual: 0.0,
            multiplicity: m,
        });
    }
    for (x, y2, m) in f.quadratic {
        let (u, v) = sphere_parts(p, &x, &y2);
        if u.is_zero() && v.is_zero() {
            out.spheres.push(Sphere {
                x: Num::Exact(x),
                y2: Num::Exact(y2),
                multiplicity: m,
            });
            continue;
        }
        let a = &Quaternion::real(x) - &(&u * &v.inverse()?);
        if !p.eval(std::slice::from_ref(&a))?.is_zero() {
            return Err(Error::Verification(format!("recovered root {a} does not vanish")));
        }
        out.isolated.push(IsolatedRoot {
            value: RootValue::Exact(a),
            residual: 0.0,
            multiplicity: m,
        });
    }
    for (z, m) in f.numeric {
        if z.im == 0.0 {
            let a = [z.re, 0.0, 0.0, 0.0];
            out.isolated.push(IsolatedRoot {
                value: RootValue::Approx(a),
                residual: residual(p, &a),
                multiplicity: m,
            });
            continue;
        }
        let s2 = z.im * z.im;
        let (u, v) = sphere_parts_f64(p, z.re, s2);
        let scale = coefficients(p).iter().map(|c| qnorm(&c.to_f64())).fold(0.0, f64::max)
            * (1.0 + z.norm()).powi(p.degree().unwrap_or(0) as i32);
        if qnorm(&u) <= 1e-9 * scale && qnorm(&v) <= 1e-9 * scale {
            out.spheres.push(Sphere {
                x: Num::Approx(z.re),
                y2: Num::Approx(s2),
                multiplicity: m,
            });
            continue;
        }
        let a = qadd(&[z.re, 0.0, 0.0, 0.0], &qscale(&qmul(&u, &qinv(&v)), -1.0));
        out.isolated.push(IsolatedRoot {
            value: RootValue::Approx(a),
            residual: residual(p, &a),
            multiplicity: m,
        });
    }
    Ok(out)
}

/// Orbit parameters `(x, y2)` of a zero set: spheres, and the spheres through
/// isolated roots; real roots give `y2 = 0`.
fn orbit_params(z: &UnivarZeroSet) -> Vec<(Num, Num)> {
    let mut out: Vec<(Num, Num)> = Vec::new();
    for r in &z.isolated {
        let pair = match &r.value {
            RootValue::Exact(a) => (Num::Exact(a.re()), Num::Exact(a.im_norm_sq())),
            RootValue::Approx(a) => (Num::Approx(a[0]), Num::Approx(a[1] * a[1] + a[2] * a[2] + a[3] * a[3])),
        };
        out.push(pair);
    }
    for s in &z.spheres {
        out.push((s.x.clone(), s.y2.clone()));
    }
    out
}

fn num_close(a: &Num, b: &Num, tol: f64) -> bool {
    match (a, b) {
        (Num::Exact(x), Num::Exact(y)) => x == y,
        _ => (a.to_f64() - b.to_f64()).abs() <= tol * (1.0 + a.to_f64().abs()),
    }
}

fn same_param_sets(a: &[(Num, Num)], b: &[(Num, Num)], tol: f64) -> bool {
    let covered = |xs: &[(Num, Num)], ys: &[(Num, Num)]| {
        xs.iter()
            .all(|(x, y2)| ys.iter().any(|(u, v2)| num_close(x, u, tol) && num_close(y2, v2, tol)))
    };
    covered(a, b) && covered(b, a)
}

/// Symmetrized zero set of `P` against the zero set of `P^s`, as sets of
/// orbit parameters.
pub fn zero_set_symmetrization_check(p: &SlicePoly) -> Result<bool> {
    zero_set_symmetrization_check_tol(p, 1e-9)
}

pub fn zero_set_symmetrization_check_tol(p: &SlicePoly, tol: f64) -> Result<bool> {
    let lhs = orbit_params(&roots(p)?);
    let rhs = orbit_params(&roots(&p.symmetrization())?);
    Ok(same_param_sets(&lhs, &rhs, tol))
}

/// Exact check that a sphere lies in the zero set, through the orbit test.
pub fn sphere_is_zero(p: &SlicePoly, x: &Rational, y2: &Rational) -> bool {
    if !y2.is_positive() {
        return false;
    }
    match ArrangedOrbit::sphere(x.clone(), y2) {
        Ok(o) => orbit_vanishing_check(p, &Orbit::Arranged(o)),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::syntax::parse_poly;

    fn p(s: &str) -> SlicePoly {
        parse_poly(s, 1).unwrap()
    }

    #[test]
    fn division_examples() {
        let (q, r) = right_divide(&p("q^2 + 1"), &p("q - i")).unwrap();
        assert_eq!((q, r.is_zero()), (p("q + i"), true));
        let (q, r) = right_divide(&p("(q+1)^3"), &p("(q+1)^2")).unwrap();
        assert_eq!((q, r.is_zero()), (p("q + 1"), true));
        let (q, r) = right_divide(&p("q + 1"), &p("(q+1)^2")).unwrap();
        assert_eq!((q, r), (SlicePoly::zero(1), p("q + 1")));
        assert!(right_divide(&p("q"), &SlicePoly::zero(1)).is_err());
    }

    #[test]
    fn division_recomposes_with_noncommuting_coefficients() {
        let a = p("q^3 (1 + j) + q^2 k - 2q + 3i");
        let d = p("q^2 (2 - k) + q j + 1");
        let (q, r) = right_divide(&a, &d).unwrap();
        assert_eq!(&(&d * &q) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn generator_of_unit_ideal() {
        assert_eq!(gcd(&p("q - i"), &p("q - j")).unwrap(), SlicePoly::one(1));
        assert_eq!(gcd(&p("(q+1)^2"), &p("(q+1)^3")).unwrap(), p("(q+1)^2"));
    }

    #[test]
    fn square_free_parts() {
        let sf = square_free(&p("(q+1)^3 (q^2+1)")).unwrap();
        assert_eq!(sf, vec![(p("q^2 + 1"), 1), (p("q + 1"), 3)]);
    }

    #[test]
    fn roots_of_sphere() {
        let z = roots(&p("q^2 + 1")).unwrap();
        assert!(z.isolated.is_empty());
        assert_eq!(
            z.spheres,
            vec![Sphere {
                x: Num::Exact(int(0)),
                y2: Num::Exact(int(1)),
                multiplicity: 2
            }]
        );
    }

    #[test]
    fn roots_of_product_of_linear_factors() {
        let f = p("(q - i)*(q - j)");
        assert_eq!(f.symmetrization(), p("(q^2 + 1)^2"));
        let z = roots(&f).unwrap();
        assert!(z.spheres.is_empty());
        assert_eq!(z.isolated.len(), 1);
        assert_eq!(z.isolated[0].value, RootValue::Exact(Quaternion::i()));
        assert_eq!(f.eval(&[-Quaternion::i()]).unwrap(), Quaternion::from_ints(-2, 0, 0, 2));
        assert!(zero_set_symmetrization_check(&f).unwrap());
    }

    #[test]
    fn linear_and_real_roots() {
        let z = roots(&p("q - 1 - i")).unwrap();
        assert_eq!(z.isolated[0].value, RootValue::Exact(Quaternion::from_ints(1, 1, 0, 0)));
        let z = roots(&p("(q+1)^2")).unwrap();
        assert_eq!(
            z.isolated,
            vec![IsolatedRoot {
                value: RootValue::Exact(Quaternion::from_ints(-1, 0, 0, 0)),
                residual: 0.0,
                multiplicity: 4
            }]
        );
    }

    #[test]
    fn irrational_sphere_is_exact() {
        // q^2 - 2q + 3 = (q - 1)^2 + 2
        let z = roots(&p("q^2 - 2q + 3")).unwrap();
        assert_eq!(
            z.spheres,
            vec![Sphere {
                x: Num::Exact(int(1)),
                y2: Num::Exact(int(2)),
                multiplicity: 2
            }]
        );
        assert!(sphere_is_zero(&p("q^2 - 2q + 3"), &int(1), &int(2)));
        assert!(!sphere_is_zero(&p("q - i"), &int(0), &int(1)));
    }

    #[test]
    fn numeric_spectrum() {
        let f = p("q^3 - 2");
        let z = roots(&f).unwrap();
        assert!(!z.is_exact());
        let real: Vec<_> = z
            .isolated
            .iter()
            .filter(|r| r.value.to_f64()[1..].iter().all(|v| *v == 0.0))
            .collect();
        assert_eq!(real.len(), 1);
        assert!((real[0].value.to_f64()[0] - 2f64.cbrt()).abs() < 1e-14);
        assert_eq!(z.spheres.len(), 1);
        assert!(zero_set_symmetrization_check(&f).unwrap());
    }

    #[test]
    fn gaussian_roots_of_complex_polynomial() {
        // (z - i)(z - 1/2 + 2i)
        let f = &p("q - i") * &p("q - 1/2 + 2i");
        let mut r = complex_roots(&f).unwrap();
        r.sort_by_key(|c| match c {
            ComplexRoot::Exact(q) => q.x.clone(),
            ComplexRoot::Approx(_) => rat(0, 1),
        });
        assert_eq!(
            r,
            vec![
                ComplexRoot::Exact(Quaternion::new(rat(1, 2), int(-2), int(0), int(0))),
                ComplexRoot::Exact(Quaternion::i())
            ]
        );
    }

    #[test]
    fn json_shape() {
        let z = roots(&p("(q - i)*(q^2 + 1)")).unwrap();
        let v = z.to_json();
        assert_eq!(v["spheres"][0]["y2"], json!("1"));
        assert_eq!(v["spheres"][0]["multiplicity"], json!(3));
    }
}
