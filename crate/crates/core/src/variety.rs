//! Common zeros on the union of slices, their spherical orbits, and
//! reducibility witnesses.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groebner::groebner;
use crate::ideal::{symmetrized_ideal, RightIdealBasis};
use crate::numeric::{self, Quat64};
use crate::point::{orbit_of, orbit_vanishing_check, ArrangedOrbit, CommutingPoint, Orbit};
use crate::poly::{MonomialOrder, SlicePoly};
use crate::quat::Quaternion;
use crate::rational::{rationalize, sqrt_exact, surd, to_f64, Rational};
use crate::split::{frame_catalog, slice_split, SliceFrame};
use crate::univar::{self, complex_roots, ComplexRoot, Num, RootValue};

/// Tolerance used to compare numeric orbit parameters.
pub const ORBIT_TOL: f64 = 1e-9;

/// Validates pairwise commutation and computes the slice data.
pub fn canonicalize(coords: Vec<Quaternion>) -> Result<CommutingPoint> {
    CommutingPoint::new(coords)
}

/// Orbit parameters known only numerically; `y` is normalized so that its
/// first nonzero entry is positive, and is all zero for a real point.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxOrbit {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

impl ApproxOrbit {
    fn new(x: Vec<f64>, mut y: Vec<f64>) -> Self {
        let scale = 1.0 + y.iter().map(|v| v.abs()).fold(0.0, f64::max);
        for v in y.iter_mut() {
            if v.abs() <= 1e-12 * scale {
                *v = 0.0;
            }
        }
        if y.iter().find(|v| **v != 0.0).is_some_and(|v| *v < 0.0) {
            y.iter_mut().for_each(|v| *v = -*v);
        }
        ApproxOrbit { x, y }
    }

    fn of_point(p: &[Quat64]) -> Self {
        let dir = p
            .iter()
            .map(|a| [a[1], a[2], a[3]])
            .max_by(|a, b| norm3(a).total_cmp(&norm3(b)))
            .unwrap_or([0.0; 3]);
        let len = norm3(&dir);
        let x = p.iter().map(|a| a[0]).collect();
        let y = p
            .iter()
            .map(|a| {
                if len == 0.0 {
                    0.0
                } else {
                    (a[1] * dir[0] + a[2] * dir[1] + a[3] * dir[2]) / len
                }
            })
            .collect();
        ApproxOrbit::new(x, y)
    }

    fn close(&self, other: &ApproxOrbit, tol: f64) -> bool {
        let near = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(u, v)| (u - v).abs() <= tol * (1.0 + u.abs()));
        self.x.len() == other.x.len() && near(&self.x, &other.x) && near(&self.y, &other.y)
    }
}

fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn exact_orbit_params(o: &Orbit) -> ApproxOrbit {
    match o {
        Orbit::Real(xs) => ApproxOrbit::new(xs.iter().map(to_f64).collect(), vec![0.0; xs.len()]),
        Orbit::Arranged(a) => ApproxOrbit::new(a.x_f64(), a.y_f64()),
    }
}

/// A finite union of orbits: real points, arranged spheres, and numeric
/// entries that could not be made exact.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OrbitSet {
    pub real_points: Vec<Vec<Rational>>,
    pub orbits: Vec<ArrangedOrbit>,
    pub approx: Vec<ApproxOrbit>,
}

impl OrbitSet {
    fn push(&mut self, o: Orbit) {
        match o {
            Orbit::Real(x) => {
                if !self.real_points.contains(&x) {
                    self.real_points.push(x);
                    self.real_points.sort();
                }
            }
            Orbit::Arranged(a) => {
                if !self.orbits.contains(&a) {
                    self.orbits.push(a);
                    self.orbits.sort();
                }
            }
        }
    }

    fn push_approx(&mut self, a: ApproxOrbit) {
        if !self.approx.iter().any(|b| b.close(&a, ORBIT_TOL)) {
            self.approx.push(a);
        }
    }

    pub fn len(&self) -> usize {
        self.real_points.len() + self.orbits.len() + self.approx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        self.approx.is_empty()
    }

    fn entries(&self) -> Vec<(Option<Orbit>, ApproxOrbit)> {
        let mut out: Vec<(Option<Orbit>, ApproxOrbit)> = Vec::new();
        for x in &self.real_points {
            let o = Orbit::Real(x.clone());
            out.push((Some(o.clone()), exact_orbit_params(&o)));
        }
        for a in &self.orbits {
            let o = Orbit::Arranged(a.clone());
            out.push((Some(o.clone()), exact_orbit_params(&o)));
        }
        for a in &self.approx {
            out.push((None, a.clone()));
        }
        out
    }

    /// Every entry of `self` occurs in `other`: exact entries must match
    /// exactly when both sides are exact, otherwise within `tol`.
    pub fn subset_of(&self, other: &OrbitSet, tol: f64) -> bool {
        let theirs = other.entries();
        self.entries().iter().all(|(e, a)| {
            theirs.iter().any(|(f, b)| match (e, f) {
                (Some(e), Some(f)) => e == f,
                _ => a.close(b, tol),
            })
        })
    }

    pub fn same_as(&self, other: &OrbitSet, tol: f64) -> bool {
        self.subset_of(other, tol) && other.subset_of(self, tol)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "real_points": self.real_points.iter().map(|x| x.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "orbits": self.orbits.iter().map(orbit_json).collect::<Vec<_>>(),
            "approx_orbits": self.approx.iter().map(|a| json!({"x": a.x, "y": a.y, "exact": false})).collect::<Vec<_>>(),
        })
    }
}

fn orbit_json(o: &ArrangedOrbit) -> Value {
    let mut v = json!({
        "x": o.x.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "y": o.y.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "exact": true,
    });
    if !o.radicand.is_one() {
        v["y_radicand"] = json!(o.radicand.to_string());
    }
    v
}

/// An input entry for [`symmetrize_set`].
#[derive(Clone, Debug)]
pub enum SetEntry {
    Point(Vec<Quaternion>),
    Orbit(ArrangedOrbit),
}

/// Replaces each point by its orbit and removes duplicates.
pub fn symmetrize_set(entries: &[SetEntry]) -> Result<OrbitSet> {
    let mut out = OrbitSet::default();
    for e in entries {
        match e {
            SetEntry::Point(c) => out.push(orbit_of(&canonicalize(c.clone())?)),
            SetEntry::Orbit(o) => out.push(Orbit::Arranged(o.clone())),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum VcPoint {
    Exact(CommutingPoint),
    Approx(Vec<Quat64>),
}

impl VcPoint {
    fn to_json(&self) -> Value {
        match self {
            VcPoint::Exact(p) => json!({"coords": p.coords(), "exact": true}),
            VcPoint::Approx(v) => json!({"coords": v, "exact": false}),
        }
    }

    fn approx_params(&self) -> ApproxOrbit {
        match self {
            VcPoint::Exact(p) => exact_orbit_params(&orbit_of(p)),
            VcPoint::Approx(v) => ApproxOrbit::of_point(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum VcOrbit {
    Exact(ArrangedOrbit),
    Approx(ApproxOrbit),
}

/// `V_c(I)`: real points, whole orbits, and non-real points whose orbit is
/// not contained in the set.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VcResult {
    pub real_points: Vec<VcPoint>,
    pub orbits: Vec<VcOrbit>,
    pub isolated_nonreal: Vec<VcPoint>,
    /// Only the slices of a finite catalog were examined.
    pub partial: bool,
}

impl VcResult {
    pub fn is_exact(&self) -> bool {
        self.real_points
            .iter()
            .chain(&self.isolated_nonreal)
            .all(|p| matches!(p, VcPoint::Exact(_)))
            && self.orbits.iter().all(|o| matches!(o, VcOrbit::Exact(_)))
    }

    pub fn is_empty(&self) -> bool {
        self.real_points.is_empty() && self.orbits.is_empty() && self.isolated_nonreal.is_empty()
    }

    /// Number of components (points and orbits).
    pub fn num_components(&self) -> usize {
        self.real_points.len() + self.orbits.len() + self.isolated_nonreal.len()
    }

    pub fn exact_orbits(&self) -> Vec<ArrangedOrbit> {
        self.orbits
            .iter()
            .filter_map(|o| match o {
                VcOrbit::Exact(a) => Some(a.clone()),
                VcOrbit::Approx(_) => None,
            })
            .collect()
    }

    /// The orbit closure `S_{V_c(I)}`.
    pub fn symmetrized(&self) -> OrbitSet {
        let mut out = OrbitSet::default();
        for p in self.real_points.iter().chain(&self.isolated_nonreal) {
            match p {
                VcPoint::Exact(c) => out.push(orbit_of(c)),
                VcPoint::Approx(_) => out.push_approx(p.approx_params()),
            }
        }
        for o in &self.orbits {
            match o {
                VcOrbit::Exact(a) => out.push(Orbit::Arranged(a.clone())),
                VcOrbit::Approx(a) => out.push_approx(a.clone()),
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "real_points": self.real_points.iter().map(VcPoint::to_json).collect::<Vec<_>>(),
            "orbits": self.orbits.iter().map(|o| match o {
                VcOrbit::Exact(a) => orbit_json(a),
                VcOrbit::Approx(a) => json!({"x": a.x, "y": a.y, "exact": false}),
            }).collect::<Vec<_>>(),
            "isolated_nonreal": self.isolated_nonreal.iter().map(VcPoint::to_json).collect::<Vec<_>>(),
            "partial": self.partial,
        })
    }

    fn push_point(&mut self, p: VcPoint, real: bool) {
        let list = if real {
            &mut self.real_points
        } else {
            &mut self.isolated_nonreal
        };
        let dup = list.iter().any(|q| match (q, &p) {
            (VcPoint::Exact(a), VcPoint::Exact(b)) => a == b,
            (VcPoint::Approx(a), VcPoint::Approx(b)) => a
                .iter()
                .zip(b)
                .all(|(u, v)| (0..4).all(|t| (u[t] - v[t]).abs() <= ORBIT_TOL * (1.0 + u[t].abs()))),
            _ => false,
        });
        if !dup {
            list.push(p);
        }
    }

    fn push_orbit(&mut self, o: VcOrbit) {
        let dup = self.orbits.iter().any(|q| match (q, &o) {
            (VcOrbit::Exact(a), VcOrbit::Exact(b)) => a == b,
            (VcOrbit::Approx(a), VcOrbit::Approx(b)) => a.close(b, ORBIT_TOL),
            _ => false,
        });
        if !dup {
            self.orbits.push(o);
        }
    }

    fn sort(&mut self) {
        let key = |p: &VcPoint| match p {
            VcPoint::Exact(c) => (0, c.to_string()),
            VcPoint::Approx(v) => (1, format!("{v:?}")),
        };
        self.real_points.sort_by_key(key);
        self.isolated_nonreal.sort_by_key(key);
        self.orbits.sort_by(|a, b| match (a, b) {
            (VcOrbit::Exact(x), VcOrbit::Exact(y)) => x.cmp(y),
            (VcOrbit::Exact(_), _) => Ordering::Less,
            (_, VcOrbit::Exact(_)) => Ordering::Greater,
            (VcOrbit::Approx(x), VcOrbit::Approx(y)) => format!("{x:?}").cmp(&format!("{y:?}")),
        });
    }
}

/// Instance-class options for [`vc_compute`].
#[derive(Clone, Debug, Default)]
pub struct VcOptions {
    /// Slices to examine when generators have non-real coefficients in
    /// several variables; without it such ideals are unsupported.
    pub slice_catalog: Option<Vec<SliceFrame>>,
}

impl VcOptions {
    pub fn with_builtin_catalog() -> Self {
        VcOptions {
            slice_catalog: Some(frame_catalog()),
        }
    }
}

/// A coordinate of a complex solution, in `C_i`.
#[derive(Clone, Debug)]
enum CVal {
    Exact(Quaternion),
    Approx(Complex64),
}

impl CVal {
    fn to_c64(&self) -> Complex64 {
        match self {
            CVal::Exact(q) => Complex64::new(to_f64(&q.w), to_f64(&q.x)),
            CVal::Approx(z) => *z,
        }
    }
}

fn numeric_specialize(g: &SlicePoly, k: usize, vals: &[Option<CVal>]) -> Vec<Complex64> {
    let d = g.degree_in(k) as usize;
    let mut out = vec![Complex64::new(0.0, 0.0); d + 1];
    for (e, c) in g.terms() {
        let mut t = Complex64::new(to_f64(&c.w), to_f64(&c.x));
        for (v, l) in e.iter().enumerate() {
            if v != k && *l > 0 {
                t *= vals[v].as_ref().expect("assigned").to_c64().powu(*l);
            }
        }
        out[e[k] as usize] += t;
    }
    out
}

fn trim(c: &mut Vec<Complex64>, tol: f64) {
    while c.last().is_some_and(|x| x.norm() <= tol) {
        c.pop();
    }
}

/// Roots in `q_k` given the values of `q_{k+1}, ..., q_n`.
fn extend(relevant: &[&SlicePoly], vals: &[Option<CVal>], k: usize) -> Result<Vec<CVal>> {
    let n = vals.len();
    if vals[k + 1..].iter().all(|v| matches!(v, Some(CVal::Exact(_)))) {
        let mut acc: Option<SlicePoly> = None;
        for g in relevant {
            let mut h = (*g).clone();
            for (v, val) in vals.iter().enumerate().skip(k + 1) {
                if let Some(CVal::Exact(x)) = val {
                    h = h.substitute(v, x);
                }
            }
            let u = h.restrict_vars(&[k]).expect("only q_k remains");
            if u.is_zero() {
                continue;
            }
            acc = Some(match acc {
                None => univar::monic(&u)?,
                Some(a) => univar::gcd(&a, &u)?,
            });
        }
        let Some(g) = acc else {
            return Err(Error::Unsupported("positive-dimensional fiber".into()));
        };
        return Ok(complex_roots(&g)?
            .into_iter()
            .map(|r| match r {
                ComplexRoot::Exact(q) => CVal::Exact(q),
                ComplexRoot::Approx(z) => CVal::Approx(z),
            })
            .collect());
    }
    let _ = n;
    let mut specs: Vec<Vec<Complex64>> = relevant.iter().map(|g| numeric_specialize(g, k, vals)).collect();
    let scale = specs.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
    for s in specs.iter_mut() {
        trim(s, 1e-9 * scale);
    }
    specs.retain(|s| !s.is_empty());
    let Some(base) = specs.iter().filter(|s| s.len() > 1).min_by_key(|s| s.len()) else {
        return Ok(Vec::new());
    };
    let mut out: Vec<Complex64> = Vec::new();
    for z in numeric::complex_roots(base) {
        let ok = specs.iter().all(|s| {
            let bound = s.iter().map(|c| c.norm()).sum::<f64>() * (1.0 + z.norm()).powi(s.len() as i32);
            numeric::horner(s, z).norm() <= 1e-7 * bound
        });
        if ok && !out.iter().any(|w| (w - z).norm() <= 1e-7 * (1.0 + z.norm())) {
            out.push(z);
        }
    }
    Ok(out.into_iter().map(CVal::Approx).collect())
}

/// Solutions of a zero-dimensional system with coefficients in `C_i`,
/// by a lex basis and back-substitution.
fn solve_commutative(polys: &[SlicePoly], n: usize) -> Result<Vec<Vec<CVal>>> {
    let polys: Vec<SlicePoly> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if polys.is_empty() {
        return Err(Error::Unsupported("the system vanishes identically".into()));
    }
    let gb = groebner(&polys, &MonomialOrder::lex(), false);
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    for k in 0..n {
        let pure = gb
            .leading_monomials()
            .iter()
            .any(|m| m[k] > 0 && m.iter().enumerate().all(|(v, x)| v == k || *x == 0));
        if !pure {
            return Err(Error::Unsupported("positive-dimensional zero set".into()));
        }
    }
    let basis = gb.basis();
    let mut partial: Vec<Vec<Option<CVal>>> = vec![vec![None; n]];
    for k in (0..n).rev() {
        let relevant: Vec<&SlicePoly> = basis
            .iter()
            .filter(|g| {
                let used = g.used_vars();
                used.contains(&k) && used.iter().all(|v| *v >= k)
            })
            .collect();
        let mut next = Vec::new();
        for vals in partial {
            for r in extend(&relevant, &vals, k)? {
                let mut v = vals.clone();
                v[k] = Some(r);
                next.push(v);
            }
        }
        partial = next;
    }
    Ok(partial
        .into_iter()
        .map(|v| v.into_iter().map(|x| x.expect("assigned")).collect())
        .collect())
}

/// Tries to turn numeric orbit parameters into an exact orbit, accepted only
/// if every generator vanishes on it exactly.
fn recognize_orbit(x: &[f64], y: &[f64], gens: &[SlicePoly]) -> Option<Orbit> {
    let xs: Vec<Rational> = x.iter().map(|v| rationalize(*v, 1_000_000)).collect::<Option<_>>()?;
    let mut radicand: Option<BigInt> = None;
    let mut ys = Vec::new();
    for v in y {
        if v.abs() <= 1e-12 {
            ys.push(Rational::zero());
            continue;
        }
        let y2 = rationalize(v * v, 1_000_000)?;
        let (c, r) = surd(&y2);
        match &radicand {
            Some(r0) if *r0 != r => return None,
            _ => radicand = Some(r),
        }
        ys.push(if *v < 0.0 { -c } else { c });
    }
    let orbit = match radicand {
        None => Orbit::Real(xs),
        Some(r) => Orbit::Arranged(ArrangedOrbit::new(xs, ys, r).ok()?),
    };
    gens.iter().all(|g| orbit_vanishing_check(g, &orbit)).then_some(orbit)
}

fn add_orbit_entry(out: &mut VcResult, o: Orbit) {
    match o {
        Orbit::Real(x) => out.push_point(VcPoint::Exact(CommutingPoint::real(&x)), true),
        Orbit::Arranged(a) => out.push_orbit(VcOrbit::Exact(a)),
    }
}

fn vc_univariate(ideal: &RightIdealBasis) -> Result<VcResult> {
    let mut out = VcResult::default();
    let basis = ideal.reduced_basis();
    if ideal.is_unit() {
        return Ok(out);
    }
    let g = &basis[0];
    let z = univar::roots(g)?;
    for r in z.isolated {
        match r.value {
            RootValue::Exact(a) => {
                let real = a.is_real();
                out.push_point(VcPoint::Exact(CommutingPoint::new(vec![a])?), real);
            }
            RootValue::Approx(a) => {
                let real = a[1..].iter().all(|v| *v == 0.0);
                out.push_point(VcPoint::Approx(vec![a]), real);
            }
        }
    }
    for s in z.spheres {
        match s.orbit() {
            Some(o) => out.push_orbit(VcOrbit::Exact(o)),
            None => out.push_orbit(VcOrbit::Approx(ApproxOrbit::new(
                vec![s.x.to_f64()],
                vec![s.y2.to_f64().sqrt()],
            ))),
        }
    }
    Ok(out)
}

fn vc_real(ideal: &RightIdealBasis) -> Result<VcResult> {
    let n = ideal.nvars();
    let gens = ideal.generators();
    let mut out = VcResult::default();
    for sol in solve_commutative(gens, n)? {
        if sol.iter().all(|v| matches!(v, CVal::Exact(_))) {
            let x: Vec<Rational> = sol
                .iter()
                .map(|v| {
                    if let CVal::Exact(q) = v {
                        q.w.clone()
                    } else {
                        unreachable!()
                    }
                })
                .collect();
            let y: Vec<Rational> = sol
                .iter()
                .map(|v| {
                    if let CVal::Exact(q) = v {
                        q.x.clone()
                    } else {
                        unreachable!()
                    }
                })
                .collect();
            let o = if y.iter().all(Zero::is_zero) {
                Orbit::Real(x)
            } else {
                Orbit::Arranged(ArrangedOrbit::new(x, y, BigInt::one())?)
            };
            if !gens.iter().all(|g| orbit_vanishing_check(g, &o)) {
                return Err(Error::Verification(format!("solution {o:?} does not vanish")));
            }
            add_orbit_entry(&mut out, o);
        } else {
            let z: Vec<Complex64> = sol.iter().map(CVal::to_c64).collect();
            let x: Vec<f64> = z.iter().map(|c| c.re).collect();
            let y: Vec<f64> = z.iter().map(|c| c.im).collect();
            match recognize_orbit(&x, &y, gens) {
                Some(o) => add_orbit_entry(&mut out, o),
                None => {
                    let a = ApproxOrbit::new(x, y);
                    if a.y.iter().all(|v| *v == 0.0) {
                        out.push_point(VcPoint::Approx(a.x.iter().map(|v| [*v, 0.0, 0.0, 0.0]).collect()), true);
                    } else {
                        out.push_orbit(VcOrbit::Approx(a));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn vc_catalog(ideal: &RightIdealBasis, frames: &[SliceFrame]) -> Result<VcResult> {
    let n = ideal.nvars();
    let gens = ideal.generators();
    let mut out = VcResult {
        partial: true,
        ..VcResult::default()
    };
    for frame in frames {
        let mut system = Vec::new();
        for g in gens {
            let (a, b) = slice_split(g, frame);
            system.push(a);
            system.push(b);
        }
        for sol in solve_commutative(&system, n)? {
            if sol.iter().all(|v| matches!(v, CVal::Exact(_))) {
                let zs: Vec<Quaternion> = sol
                    .iter()
                    .map(|v| {
                        if let CVal::Exact(q) = v {
                            q.clone()
                        } else {
                            unreachable!()
                        }
                    })
                    .collect();
                let p = frame.point(&zs);
                if !gens.iter().all(|g| p.eval(g).is_ok_and(|v| v.is_zero())) {
                    return Err(Error::Verification(format!("slice solution {p} does not vanish")));
                }
                if p.is_real() {
                    out.push_point(VcPoint::Exact(p), true);
                    continue;
                }
                let o = orbit_of(&p);
                if gens.iter().all(|g| orbit_vanishing_check(g, &o)) {
                    add_orbit_entry(&mut out, o);
                } else {
                    out.push_point(VcPoint::Exact(p), false);
                }
            } else {
                let j = frame.j().to_f64();
                let coords: Vec<Quat64> = sol
                    .iter()
                    .map(|v| {
                        let z = v.to_c64();
                        [z.re, z.im * j[1], z.im * j[2], z.im * j[3]]
                    })
                    .collect();
                let real = sol.iter().all(|v| v.to_c64().im.abs() <= 1e-12);
                out.push_point(VcPoint::Approx(coords), real);
            }
        }
    }
    Ok(out)
}

/// Computes `V_c(I)` for one variable, for real-coefficient generators in
/// several variables (the system is then the same complex system on every
/// slice), or on a declared slice catalog (reported as partial).
pub fn vc_compute(ideal: &RightIdealBasis, options: &VcOptions) -> Result<VcResult> {
    let mut out = if ideal.nvars() == 1 {
        vc_univariate(ideal)?
    } else if ideal.generators().iter().all(SlicePoly::is_real) {
        vc_real(ideal)?
    } else if let Some(frames) = &options.slice_catalog {
        vc_catalog(ideal, frames)?
    } else {
        return Err(Error::Unsupported(
            "non-real coefficients in several variables: unsupported, use slice catalog".into(),
        ));
    };
    out.sort();
    Ok(out)
}

/// The set equals its own orbit closure.
pub fn spherical_symmetry_check(v: &VcResult) -> bool {
    v.isolated_nonreal.is_empty()
}

/// Orbit closure of `V_c(I)` against `V_c` of the (bounded) symmetrized ideal.
#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub symmetrized_zeros: OrbitSet,
    pub zeros_of_symmetrized: OrbitSet,
    pub equal: bool,
    pub lhs_subset_rhs: bool,
    pub rhs_subset_lhs: bool,
    /// The symmetrized ideal was computed exactly (principal case).
    pub exact_ideal: bool,
    pub note: String,
}

impl ClosureReport {
    pub fn to_json(&self) -> Value {
        json!({
            "symmetrized_zeros": self.symmetrized_zeros.to_json(),
            "zeros_of_symmetrized": self.zeros_of_symmetrized.to_json(),
            "equal": self.equal,
            "lhs_subset_rhs": self.lhs_subset_rhs,
            "rhs_subset_lhs": self.rhs_subset_lhs,
            "exact_ideal": self.exact_ideal,
            "note": self.note,
        })
    }
}

pub fn closure_check(ideal: &RightIdealBasis, bound: u32, options: &VcOptions) -> Result<ClosureReport> {
    closure_check_tol(ideal, bound, options, ORBIT_TOL)
}

pub fn closure_check_tol(ideal: &RightIdealBasis, bound: u32, options: &VcOptions, tol: f64) -> Result<ClosureReport> {
    let lhs = vc_compute(ideal, options)?.symmetrized();
    let s = symmetrized_ideal(ideal, bound)?;
    let rhs = vc_compute(&s.ideal, options)?.symmetrized();
    let lhs_in = lhs.subset_of(&rhs, tol);
    let rhs_in = rhs.subset_of(&lhs, tol);
    let note = if s.exact {
        "symmetrized ideal computed exactly".to_string()
    } else {
        format!(
            "symmetrized ideal approximated from cofactors of degree <= {bound}; the approximation is smaller, so its zero set can only be larger (expect lhs ⊆ rhs)"
        )
    };
    Ok(ClosureReport {
        symmetrized_zeros: lhs,
        zeros_of_symmetrized: rhs,
        equal: lhs_in && rhs_in,
        lhs_subset_rhs: lhs_in,
        rhs_subset_lhs: rhs_in,
        exact_ideal: s.exact,
        note,
    })
}

#[derive(Clone, Debug)]
enum Component {
    Real(Vec<Rational>),
    Orbit(ArrangedOrbit),
    Isolated(CommutingPoint),
}

fn components(v: &VcResult) -> Option<Vec<Component>> {
    let mut out = Vec::new();
    for p in &v.real_points {
        let VcPoint::Exact(c) = p else { return None };
        out.push(Component::Real(c.coords().iter().map(Quaternion::re).collect()));
    }
    for o in &v.orbits {
        let VcOrbit::Exact(a) = o else { return None };
        out.push(Component::Orbit(a.clone()));
    }
    for p in &v.isolated_nonreal {
        let VcPoint::Exact(c) = p else { return None };
        out.push(Component::Isolated(c.clone()));
    }
    Some(out)
}

/// Real-coefficient generators of the ideal of one component.
fn component_ideal(c: &Component, n: usize) -> Vec<SlicePoly> {
    let lin = |k: usize, x: &Rational| &SlicePoly::var(n, k) - &SlicePoly::constant(n, Quaternion::real(x.clone()));
    match c {
        Component::Real(x) => (0..n).map(|k| lin(k, &x[k])).collect(),
        Component::Orbit(o) => {
            let k0 = o.y.iter().position(|y| !y.is_zero()).expect("non-real orbit");
            let mut out = vec![o.characteristic(k0, n)];
            for k in 0..n {
                if k == k0 {
                    continue;
                }
                // y_k0 (q_k - x_k) - y_k (q_k0 - x_k0)
                let rel = &lin(k, &o.x[k]).mul_right(&Quaternion::real(o.y[k0].clone()))
                    - &lin(k0, &o.x[k0]).mul_right(&Quaternion::real(o.y[k].clone()));
                out.push(rel);
            }
            out
        }
        Component::Isolated(p) => (0..n)
            .map(|k| &SlicePoly::var(n, k) - &SlicePoly::constant(n, p.coords()[k].clone()))
            .collect(),
    }
}

/// Generators of an ideal vanishing exactly on a union of components.
fn union_ideal(parts: &[&Component], n: usize) -> Result<Vec<SlicePoly>> {
    if n == 1 {
        // products of factors; an isolated root c enters as q - F(c)^-1 c F(c)
        let mut f = SlicePoly::one(1);
        for c in parts {
            match c {
                Component::Isolated(p) => {
                    let a = &p.coords()[0];
                    let fa = f.eval(std::slice::from_ref(a))?;
                    if fa.is_zero() {
                        continue;
                    }
                    let b = &(&fa.inverse()? * a) * &fa;
                    f = &f * &SlicePoly::univariate([-b, Quaternion::one()]);
                }
                other => f = &f * &component_ideal(other, 1)[0],
            }
        }
        return Ok(vec![f]);
    }
    let mut gens = vec![SlicePoly::one(n)];
    for c in parts {
        let cg = component_ideal(c, n);
        let mut next = Vec::new();
        for a in &gens {
            for b in &cg {
                next.push(a * b);
            }
        }
        gens = next;
    }
    Ok(gens)
}

fn same_vc(a: &VcResult, b: &VcResult) -> bool {
    let norm = |v: &VcResult| {
        let mut v = v.clone();
        v.partial = false;
        v.sort();
        v
    };
    norm(a) == norm(b)
}

/// A verified pair `(I1, I2)` with `V_c(I1) ∪ V_c(I2) = v` and neither ideal
/// contained in the other. `None` proves nothing.
pub fn reducibility_witness(
    v: &VcResult,
    ideal: &RightIdealBasis,
    bound: u32,
    options: &VcOptions,
) -> Result<Option<(RightIdealBasis, RightIdealBasis)>> {
    let Some(comps) = components(v) else {
        return Err(Error::Unsupported("reducibility needs an exact zero set".into()));
    };
    if comps.len() < 2 || comps.len() > 12 {
        return Ok(None);
    }
    let n = ideal.nvars();
    let order = ideal.order().clone();
    let m = comps.len();
    for mask in 1..(1u32 << (m - 1)) {
        let (left, right): (Vec<&Component>, Vec<&Component>) = {
            let mut l = Vec::new();
            let mut r = Vec::new();
            for (k, c) in comps.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    l.push(c);
                } else {
                    r.push(c);
                }
            }
            (l, r)
        };
        let g1 = union_ideal(&left, n)?;
        let g2 = union_ideal(&right, n)?;
        if g1.iter().chain(&g2).any(|g| g.degree().unwrap_or(0) > bound) {
            continue;
        }
        let i1 = RightIdealBasis::new(g1, order.clone())?;
        let i2 = RightIdealBasis::new(g2, order.clone())?;
        if i1.contains_ideal(&i2) || i2.contains_ideal(&i1) {
            continue;
        }
        let v1 = vc_compute(&i1, options)?;
        let v2 = vc_compute(&i2, options)?;
        let mut union = v1.clone();
        for p in v2.real_points {
            union.push_point(p, true);
        }
        for p in v2.isolated_nonreal {
            union.push_point(p, false);
        }
        for o in v2.orbits {
            union.push_orbit(o);
        }
        if same_vc(&union, v) {
            return Ok(Some((i1, i2)));
        }
    }
    Ok(None)
}

/// `y2` of a sphere as an exact square root when it is a perfect square.
pub fn sphere_radius(y2: &Num) -> Option<Rational> {
    match y2 {
        Num::Exact(r) if !r.is_negative() => sqrt_exact(r),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::syntax::parse_poly;

    fn ideal(gens: &[&str], n: usize) -> RightIdealBasis {
        RightIdealBasis::new(
            gens.iter().map(|s| parse_poly(s, n).unwrap()).collect(),
            MonomialOrder::default(),
        )
        .unwrap()
    }

    fn q(w: i64, x: i64, y: i64, z: i64) -> Quaternion {
        Quaternion::from_ints(w, x, y, z)
    }

    fn orbit(x: &[i64], y: &[i64]) -> ArrangedOrbit {
        ArrangedOrbit::new(
            x.iter().map(|v| int(*v)).collect(),
            y.iter().map(|v| int(*v)).collect(),
            BigInt::one(),
        )
        .unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        assert!(canonicalize(vec![q(0, 1, 0, 0), q(-1, 2, 0, 0)]).is_ok());
        assert_eq!(
            canonicalize(vec![q(0, 1, 0, 0), q(0, 0, 1, 0)]),
            Err(Error::NonCommuting)
        );
    }

    #[test]
    fn symmetrize_examples() {
        let s = symmetrize_set(&[
            SetEntry::Point(vec![q(0, 1, 0, 0), q(0, 1, 0, 0)]),
            SetEntry::Point(vec![q(0, -1, 0, 0), q(0, -1, 0, 0)]),
        ])
        .unwrap();
        assert_eq!(s.orbits, vec![orbit(&[0, 0], &[1, 1])]);
        let s = symmetrize_set(&[
            SetEntry::Point(vec![q(0, 1, 0, 0), q(0, 1, 0, 0)]),
            SetEntry::Point(vec![q(0, -1, 0, 0), q(0, 1, 0, 0)]),
        ])
        .unwrap();
        assert_eq!(s.orbits.len(), 2);
        let again = symmetrize_set(&s.orbits.iter().cloned().map(SetEntry::Orbit).collect::<Vec<_>>()).unwrap();
        assert_eq!(again, s);
        assert!(symmetrize_set(&[SetEntry::Point(vec![q(0, 1, 0, 0), q(0, 0, 1, 0)])]).is_err());
    }

    #[test]
    fn two_sphere_example() {
        let i = ideal(&["q1^2 + 1", "q2^2 + 1"], 2);
        let v = vc_compute(&i, &VcOptions::default()).unwrap();
        assert!(v.real_points.is_empty() && v.isolated_nonreal.is_empty());
        assert_eq!(
            v.exact_orbits(),
            vec![orbit(&[0, 0], &[1, -1]), orbit(&[0, 0], &[1, 1])]
        );
        assert!(spherical_symmetry_check(&v));
        let (i1, i2) = reducibility_witness(&v, &i, 4, &VcOptions::default()).unwrap().unwrap();
        assert!(!i1.contains_ideal(&i2) && !i2.contains_ideal(&i1));
    }

    #[test]
    fn univariate_examples() {
        let v = vc_compute(&ideal(&["q^2 + 1"], 1), &VcOptions::default()).unwrap();
        assert_eq!(v.exact_orbits(), vec![orbit(&[0], &[1])]);
        assert!(
            reducibility_witness(&v, &ideal(&["q^2 + 1"], 1), 4, &VcOptions::default())
                .unwrap()
                .is_none()
        );
        let v = vc_compute(&ideal(&["q - i", "q - j"], 1), &VcOptions::default()).unwrap();
        assert!(v.is_empty());
        assert!(spherical_symmetry_check(&v));
        let v = vc_compute(&ideal(&["q - i"], 1), &VcOptions::default()).unwrap();
        assert_eq!(
            v.isolated_nonreal,
            vec![VcPoint::Exact(CommutingPoint::new(vec![Quaternion::i()]).unwrap())]
        );
        assert!(!spherical_symmetry_check(&v));
    }

    #[test]
    fn two_spheres_in_one_variable_reduce() {
        let i = ideal(&["(q^2 + 1)*(q^2 - 2q + 2)"], 1);
        let v = vc_compute(&i, &VcOptions::default()).unwrap();
        assert_eq!(v.exact_orbits().len(), 2);
        let (i1, i2) = reducibility_witness(&v, &i, 4, &VcOptions::default()).unwrap().unwrap();
        let gens = [i1.generators()[0].clone(), i2.generators()[0].clone()];
        assert!(gens.contains(&parse_poly("q^2 + 1", 1).unwrap()));
        assert!(gens.contains(&parse_poly("q^2 - 2q + 2", 1).unwrap()));
    }

    #[test]
    fn closure_examples() {
        for (g, n) in [
            (vec!["q - i"], 1),
            (vec!["(q+1)^2"], 1),
            (vec!["q1^2 + 1", "q2^2 + 1"], 2),
        ] {
            let r = closure_check(&ideal(&g, n), 2, &VcOptions::default()).unwrap();
            assert!(r.equal, "{g:?}: {r:?}");
        }
    }

    #[test]
    fn catalog_slices() {
        let i = ideal(&["q1 - i", "q2 - q1"], 2);
        assert!(matches!(
            vc_compute(&i, &VcOptions::default()),
            Err(Error::Unsupported(_))
        ));
        let v = vc_compute(&i, &VcOptions::with_builtin_catalog()).unwrap();
        assert!(v.partial);
        assert_eq!(
            v.isolated_nonreal,
            vec![VcPoint::Exact(
                CommutingPoint::new(vec![Quaternion::i(), Quaternion::i()]).unwrap()
            )]
        );
        let j = ideal(&["q1^2 + 1", "q2 - q1 (1 + 0k)"], 2);
        let v = vc_compute(&j, &VcOptions::with_builtin_catalog()).unwrap();
        assert_eq!(v.exact_orbits(), vec![orbit(&[0, 0], &[1, 1])]);
    }

    #[test]
    fn irrational_real_system() {
        let i = ideal(&["q1^2 - 2", "q2 - 1"], 2);
        let v = vc_compute(&i, &VcOptions::default()).unwrap();
        assert_eq!(v.real_points.len(), 2);
        assert!(v.real_points.iter().all(|p| matches!(p, VcPoint::Approx(_))));
        let i = ideal(&["q1^2 + 2", "q2 - q1"], 2);
        let v = vc_compute(&i, &VcOptions::default()).unwrap();
        let o = ArrangedOrbit::new(vec![int(0), int(0)], vec![int(1), int(1)], BigInt::from(2)).unwrap();
        assert_eq!(v.exact_orbits(), vec![o]);
    }
}
