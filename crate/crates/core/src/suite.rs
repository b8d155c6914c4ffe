//! The bundled example suite: eight seeded, exact checks with time limits.
//! Each check compares the engine against an independent computation where
//! one exists (naive term expansion, the linear membership oracle, orbits
//! read off from constructed roots).

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::ideal::{
    default_oracle_bound, member, member_linear_oracle, quasi_prime_search_bounded, quasi_prime_violation_verify,
    radical_member_bounded, random_quaternions, Membership, QuasiPrimeViolation, RightIdealBasis, SearchLimits,
};
use crate::point::{transport_point, ArrangedOrbit, CommutingPoint};
use crate::poly::{MonomialOrder, SlicePoly};
use crate::quat::Quaternion;
use crate::rational::{int, rat, Rational};
use crate::syntax::parse_poly;
use crate::univar::{right_divide, roots, RootValue};
use crate::variety::{reducibility_witness, symmetrize_set, vc_compute, SetEntry, VcOptions, VcOrbit};

/// Tolerance for orbit parameters computed numerically.
pub const NUMERIC_ORBIT_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl CheckOutcome {
    /// Correct and within its time limit.
    pub fn ok(&self) -> bool {
        self.passed && self.elapsed <= self.limit
    }

    pub fn line(&self) -> String {
        format!(
            "[{}] {}. {} ({:.2}s, limit {}s): {}",
            if self.ok() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

type CheckFn = fn() -> Result<String>;

/// `(id, title, limit in seconds, body)`; a body returns a summary on
/// success and a description of the first failure otherwise.
const CHECKS: [(u32, &str, u64, CheckFn); 8] = [
    (1, "square of q+1", 10, square_of_linear),
    (2, "cube of q+1", 10, cube_of_linear),
    (3, "two spheres in two variables", 10, two_spheres),
    (4, "orbit closure of zero sets", 30, orbit_closure),
    (5, "evaluation of products", 10, product_evaluation),
    (6, "ring laws and conjugation", 20, ring_laws),
    (7, "membership oracle agreement", 30, oracle_agreement),
    (8, "univariate division and roots", 10, univariate_division_and_roots),
];

pub fn check_ids() -> Vec<u32> {
    CHECKS.iter().map(|c| c.0).collect()
}

pub fn run_check(id: u32) -> Option<CheckOutcome> {
    let (id, title, limit, body) = *CHECKS.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (passed, detail) = match body() {
        Ok(s) => (true, s),
        Err(e) => (false, e.to_string()),
    };
    Some(CheckOutcome {
        id,
        title,
        passed,
        detail,
        elapsed: start.elapsed(),
        limit: Duration::from_secs(limit),
    })
}

pub fn run_all() -> Vec<CheckOutcome> {
    check_ids().into_iter().filter_map(run_check).collect()
}

fn fail(msg: impl Into<String>) -> crate::error::Error {
    crate::error::Error::Verification(msg.into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

fn poly(s: &str, n: usize) -> SlicePoly {
    parse_poly(s, n).expect("built-in expression")
}

fn ideal(gens: &[&str], n: usize) -> Result<RightIdealBasis> {
    RightIdealBasis::new(gens.iter().map(|s| poly(s, n)).collect(), MonomialOrder::default())
}

/// Exactly `count` seeded nonzero sample quaternions.
pub fn radical_samples(count: usize, seed: u64) -> Vec<Quaternion> {
    let mut out = random_quaternions(count + count / 4 + 4, seed);
    out.truncate(count);
    out
}

/// Product by direct expansion over pairs of terms.
pub fn naive_product(p: &SlicePoly, q: &SlicePoly) -> SlicePoly {
    let mut acc: BTreeMap<Vec<u32>, Quaternion> = BTreeMap::new();
    for (e1, c1) in p.terms() {
        for (e2, c2) in q.terms() {
            let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
            let slot = acc.entry(e).or_default();
            *slot = &*slot + &(c1 * c2);
        }
    }
    SlicePoly::from_terms(p.nvars(), acc)
}

pub fn random_small_quaternion(rng: &mut impl Rng) -> Quaternion {
    let mut c = || rat(rng.gen_range(-3..=3), *[1, 1, 2].choose(rng).unwrap());
    Quaternion::new(c(), c(), c(), c())
}

/// At most `terms` terms of total degree `<= max_degree`.
pub fn random_poly(rng: &mut impl Rng, n: usize, max_degree: u32, terms: usize) -> SlicePoly {
    let mut p = SlicePoly::zero(n);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_degree);
        let mut e = vec![0u32; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        p = &p + &SlicePoly::monomial(n, e, random_small_quaternion(rng));
    }
    p
}

fn random_nonzero_poly(rng: &mut impl Rng, n: usize, max_degree: u32, terms: usize) -> SlicePoly {
    loop {
        let p = random_poly(rng, n, max_degree, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A point `x_k + y_k v` with one random imaginary direction `v`.
pub fn random_commuting_point(rng: &mut impl Rng, n: usize) -> CommutingPoint {
    let v = loop {
        let v = random_small_quaternion(rng).im();
        if !v.is_zero() {
            break v;
        }
    };
    let coords = (0..n)
        .map(|_| {
            let x = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            let y = rat(rng.gen_range(-4..=4), rng.gen_range(1..=3));
            &Quaternion::real(x) + &v.scale(&y)
        })
        .collect();
    CommutingPoint::new(coords).expect("one direction")
}

fn square_of_linear() -> Result<String> {
    let i = ideal(&["(q+1)^2"], 1)?;
    let p = poly("q + 1", 1);
    ensure(!member(&p, &i)?.is_member(), || {
        "q+1 reported as a member of <(q+1)^2>".into()
    })?;
    ensure(!member_linear_oracle(&p, &i, default_oracle_bound(&p, &i)), || {
        "oracle places q+1 in <(q+1)^2>".into()
    })?;
    let report = radical_member_bounded(&p, &i, 2, &radical_samples(100, 1))?;
    ensure(report.samples.len() == 100, || "expected 100 samples".into())?;
    if let Some(s) = report.samples.iter().find(|s| s.least_n != Some(2)) {
        return Err(fail(format!(
            "radical criterion at a = {}: least N {:?}, expected 2",
            s.a, s.least_n
        )));
    }
    let search = quasi_prime_search_bounded(&i, &[], &SearchLimits::default())?;
    if let Some(v) = search.found {
        return Err(fail(format!(
            "unexpected quasi-prime violation P = {}, Q = {}",
            v.p, v.q
        )));
    }
    Ok(format!(
        "q+1 not a member; radical witnesses at N=2 for 100 samples; no violation among {} candidates",
        search.candidates_examined
    ))
}

fn cube_of_linear() -> Result<String> {
    let i = ideal(&["(q+1)^3"], 1)?;
    let p = poly("q + 1", 1);
    let v = QuasiPrimeViolation::build(&poly("(q+1)^2", 1), &p, &i)?;
    ensure(quasi_prime_violation_verify(&v, &i)?, || {
        "violation ((q+1)^2, q+1) does not verify".into()
    })?;
    ensure(!member(&p, &i)?.is_member(), || {
        "q+1 reported as a member of <(q+1)^3>".into()
    })?;
    let report = radical_member_bounded(&p, &i, 3, &radical_samples(100, 2))?;
    if let Some(s) = report.samples.iter().find(|s| s.least_n != Some(3)) {
        return Err(fail(format!(
            "radical criterion at a = {}: least N {:?}, expected 3",
            s.a, s.least_n
        )));
    }
    Ok("violation ((q+1)^2, q+1) verified; q+1 not a member; radical witnesses at N=3 for 100 samples".into())
}

fn two_spheres() -> Result<String> {
    let i = ideal(&["q1^2 + 1", "q2^2 + 1"], 2)?;
    let gens = i.generators().to_vec();
    match member(&poly("q1^2 - q2^2", 2), &i)? {
        Membership::Member(cert) => {
            let sum = cert
                .cofactors
                .iter()
                .zip(&gens)
                .fold(SlicePoly::zero(2), |acc, (h, g)| &acc + &naive_product(g, h));
            ensure(sum == cert.target, || {
                "certificate for q1^2 - q2^2 does not recompose".into()
            })?;
        }
        Membership::NonMember(r) => return Err(fail(format!("q1^2 - q2^2 rejected with remainder {r}"))),
    }
    ensure(!member(&poly("q1 - q2", 2), &i)?.is_member(), || {
        "q1 - q2 reported as a member".into()
    })?;
    match member(&poly("q1 + q2", 2).symmetrization(), &i)? {
        Membership::NonMember(r) => ensure(r == poly("2 q1 q2 - 2", 2), || {
            format!("normal form of (q1+q2)^s is {r}, expected 2q1q2 - 2")
        })?,
        Membership::Member(_) => return Err(fail("(q1+q2)^s reported as a member")),
    }
    let v = vc_compute(&i, &VcOptions::default())?;
    let orbit = |y: [i64; 2]| {
        ArrangedOrbit::new(
            vec![int(0), int(0)],
            y.iter().map(|t| int(*t)).collect(),
            BigInt::from(1),
        )
    };
    let want = vec![VcOrbit::Exact(orbit([1, -1])?), VcOrbit::Exact(orbit([1, 1])?)];
    ensure(
        v.real_points.is_empty() && v.isolated_nonreal.is_empty() && v.orbits == want,
        || format!("zero set {} differs from the two expected orbits", v.to_json()),
    )?;
    let Some((i1, i2)) = reducibility_witness(&v, &i, 4, &VcOptions::default())? else {
        return Err(fail("no reducibility witness"));
    };
    ensure(!i1.contains_ideal(&i2) && !i2.contains_ideal(&i1), || {
        "witness ideals are nested".into()
    })?;
    Ok(format!(
        "certificate recomposes; NF((q1+q2)^s) = 2q1q2 - 2; orbits S[(0,1),(0,-1)], S[(0,1),(0,1)]; witness <{}> , <{}>",
        i1.generators().len(),
        i2.generators().len()
    ))
}

const ROOT_DIRECTIONS: [(i64, i64, i64, i64); 6] = [
    (1, 0, 0, 1),
    (0, 1, 0, 1),
    (0, 0, 1, 1),
    (3, 4, 0, 5),
    (1, 2, 2, 3),
    (2, -2, 1, 3),
];

fn random_root(rng: &mut impl Rng) -> Quaternion {
    let (a, b, c, d) = *ROOT_DIRECTIONS.choose(rng).unwrap();
    let u = Quaternion::new(int(0), rat(a, d), rat(b, d), rat(c, d));
    let x = rat(rng.gen_range(-3..=3), rng.gen_range(1..=2));
    let y = if rng.gen_bool(0.25) {
        int(0)
    } else {
        rat(rng.gen_range(-3..=3), rng.gen_range(1..=2))
    };
    &Quaternion::real(x) + &u.scale(&y)
}

fn orbit_closure() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let opts = VcOptions::default();
    for case in 0..50 {
        let d = rng.gen_range(1..=4);
        let rs: Vec<Quaternion> = (0..d).map(|_| random_root(&mut rng)).collect();
        let p = rs.iter().fold(SlicePoly::one(1), |acc, a| {
            &acc * &SlicePoly::univariate([-a.clone(), Quaternion::one()])
        });
        let lhs = vc_compute(&RightIdealBasis::principal(p.clone())?, &opts)?.symmetrized();
        let rhs = vc_compute(&RightIdealBasis::principal(p.symmetrization())?, &opts)?.symmetrized();
        let expected = symmetrize_set(&rs.iter().map(|a| SetEntry::Point(vec![a.clone()])).collect::<Vec<_>>())?;
        ensure(lhs.is_exact() && rhs.is_exact(), || {
            format!("case {case}: inexact result for P = {p}")
        })?;
        ensure(lhs == rhs && lhs == expected, || {
            format!(
                "case {case}: P = {p}: {} vs {} vs {}",
                lhs.to_json(),
                rhs.to_json(),
                expected.to_json()
            )
        })?;
    }
    for case in 0..20 {
        let d = rng.gen_range(3..=4);
        let mut coeffs: Vec<Quaternion> = (0..d).map(|_| random_small_quaternion(&mut rng)).collect();
        coeffs.push(Quaternion::one());
        let p = SlicePoly::univariate(coeffs);
        let lhs = vc_compute(&RightIdealBasis::principal(p.clone())?, &opts)?.symmetrized();
        let rhs = vc_compute(&RightIdealBasis::principal(p.symmetrization())?, &opts)?.symmetrized();
        ensure(lhs.same_as(&rhs, NUMERIC_ORBIT_TOL), || {
            format!("numeric case {case}: P = {p}: {} vs {}", lhs.to_json(), rhs.to_json())
        })?;
    }
    Ok("50 exact cases equal; 20 numeric cases agree within 1e-9".into())
}

fn product_evaluation() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut zero_cases = 0;
    for case in 0..500 {
        let n = rng.gen_range(1..=3);
        let a = random_commuting_point(&mut rng, n);
        let q = random_poly(&mut rng, n, 3, 4);
        let p = if case < 100 {
            // vanishes at a: sum of (q_k - a_k) * R_k
            (0..n).fold(SlicePoly::zero(n), |acc, k| {
                let lin = &SlicePoly::var(n, k) - &SlicePoly::constant(n, a.coords()[k].clone());
                &acc + &(&lin * &random_poly(&mut rng, n, 2, 3))
            })
        } else {
            random_poly(&mut rng, n, 3, 4)
        };
        let pa = a.eval(&p)?;
        if case < 100 {
            ensure(pa.is_zero(), || {
                format!("case {case}: constructed P does not vanish at {a}")
            })?;
        }
        let lhs = a.eval(&(&p * &q))?;
        let rhs = if pa.is_zero() {
            zero_cases += 1;
            Quaternion::zero()
        } else {
            &pa * &transport_point(&a, &pa)?.eval(&q)?
        };
        ensure(lhs == rhs, || {
            format!("case {case}: P = {p}, Q = {q}, a = {a}: {lhs} != {rhs}")
        })?;
    }
    Ok(format!("500 cases exact, {zero_cases} with P(a) = 0"))
}

fn ring_laws() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..1000 {
        let n = rng.gen_range(1..=3);
        let p = random_poly(&mut rng, n, 2, 3);
        let q = random_poly(&mut rng, n, 2, 3);
        let r = random_poly(&mut rng, n, 2, 3);
        let pq = &p * &q;
        let at = |what: &str| format!("case {case}: {what} fails for P = {p}, Q = {q}, R = {r}");
        ensure(pq == naive_product(&p, &q), || at("product against direct expansion"))?;
        ensure(&pq * &r == &p * &(&q * &r), || at("associativity"))?;
        ensure(&p * &(&q + &r) == &pq + &(&p * &r), || at("left distributivity"))?;
        ensure(&(&p + &q) * &r == &(&p * &r) + &(&q * &r), || {
            at("right distributivity")
        })?;
        ensure(pq.regular_conj() == &q.regular_conj() * &p.regular_conj(), || {
            at("conjugate of a product")
        })?;
        let s = p.symmetrization();
        ensure(s.is_real(), || at("realness of the symmetrization"))?;
        ensure(&s * &q == &q * &s, || at("centrality of the symmetrization"))?;
        ensure(s == &p.regular_conj() * &p, || at("P * P^c = P^c * P"))?;
    }
    Ok("1000 cases of each law exact".into())
}

fn oracle_agreement() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut members = 0;
    for case in 0..100 {
        let n = rng.gen_range(1..=2);
        let ngens = rng.gen_range(1..=2);
        let gens: Vec<SlicePoly> = (0..ngens).map(|_| random_nonzero_poly(&mut rng, n, 2, 3)).collect();
        let i = RightIdealBasis::new(gens.clone(), MonomialOrder::default())?;
        let p = if case % 2 == 0 {
            gens.iter().fold(SlicePoly::zero(n), |acc, g| {
                let room = 3 - g.degree().unwrap_or(0);
                &acc + &(g * &random_poly(&mut rng, n, room, 2))
            })
        } else {
            random_poly(&mut rng, n, 3, 4)
        };
        let by_basis = member(&p, &i)?.is_member();
        let by_oracle = member_linear_oracle(&p, &i, default_oracle_bound(&p, &i));
        ensure(by_basis == by_oracle, || {
            format!(
                "case {case}: P = {p}, I = <{}>: basis says {by_basis}, oracle says {by_oracle}",
                join(&gens)
            )
        })?;
        members += by_basis as usize;
    }
    Ok(format!("100 cases agree ({members} members)"))
}

fn join(ps: &[SlicePoly]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

fn univariate_division_and_roots() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in 0..200 {
        let p = random_poly(&mut rng, 1, 5, 5);
        let d = random_nonzero_poly(&mut rng, 1, 3, 3);
        let (q, r) = right_divide(&p, &d)?;
        ensure(&naive_product(&d, &q) + &r == p, || {
            format!("case {case}: P = {p}, D = {d}: recomposition fails")
        })?;
        ensure(r.is_zero() || r.degree() < d.degree(), || {
            format!("case {case}: remainder degree too large")
        })?;
    }
    let p = poly("(q - i)*(q - j)", 1);
    let z = roots(&p)?;
    let isolated: Vec<&RootValue> = z.isolated.iter().map(|r| &r.value).collect();
    ensure(
        isolated == [&RootValue::Exact(Quaternion::i())] && z.spheres.is_empty(),
        || format!("roots of (q-i)*(q-j): {}", z.to_json()),
    )?;
    ensure(p.symmetrization() == poly("(q^2 + 1)^2", 1), || {
        "(q-i)*(q-j) has the wrong symmetrization".into()
    })?;
    let z = roots(&poly("q^2 + 1", 1))?;
    let sphere_ok = z.isolated.is_empty()
        && z.spheres.len() == 1
        && z.spheres[0].orbit() == Some(ArrangedOrbit::sphere(Rational::from(int(0)), &int(1))?);
    ensure(sphere_ok, || format!("roots of q^2+1: {}", z.to_json()))?;
    Ok("200 divisions recompose; roots {i} and the sphere (0,1) exact".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_product_matches_monomial_rule() {
        let p = poly("q1 i + q2", 2);
        let q = poly("q1 j - 1", 2);
        assert_eq!(naive_product(&p, &q), poly("q1^2 k + q1 q2 j - q1 i - q2", 2));
    }

    #[test]
    fn samples_have_requested_length() {
        assert_eq!(radical_samples(100, 3).len(), 100);
    }

    #[test]
    fn random_points_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..20 {
            let a = random_commuting_point(&mut rng, 3);
            assert!(a.coords().iter().all(|x| a.coords().iter().all(|y| x.commutes(y))));
        }
    }

    #[test]
    fn unknown_check_is_none() {
        assert!(run_check(99).is_none());
        assert_eq!(check_ids(), (1..=8).collect::<Vec<_>>());
    }
}
