//! Right ideals: membership with certificates, the radical criterion, quasi
//! prime violations and the bounded symmetrized ideal.
//!
//! Questions that quantify over infinitely many elements (radical membership
//! for every `a`, quasi-primeness for every pair) are split into exact
//! verifiers for finite evidence and bounded searches whose reports say
//! exactly what was and was not examined.

use std::collections::HashSet;
use std::sync::OnceLock;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{groebner, Groebner};
use crate::linalg;
use crate::poly::{total_degree, MonomialOrder, MultiIndex, SlicePoly};
use crate::quat::Quaternion;
use crate::rational::rat;

/// Generators of a right ideal, with the reduced basis computed on demand.
#[derive(Debug)]
pub struct RightIdealBasis {
    generators: Vec<SlicePoly>,
    order: MonomialOrder,
    gb: OnceLock<Groebner>,
}

impl Clone for RightIdealBasis {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        RightIdealBasis {
            generators: self.generators.clone(),
            order: self.order.clone(),
            gb,
        }
    }
}

impl RightIdealBasis {
    pub fn new(generators: Vec<SlicePoly>, order: MonomialOrder) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::Domain("an ideal needs at least one generator".into()));
        };
        let n = first.nvars();
        for g in &generators {
            if g.nvars() != n {
                return Err(Error::NvarsMismatch {
                    left: n,
                    right: g.nvars(),
                });
            }
            if g.is_zero() {
                return Err(Error::Domain("generators must be nonzero".into()));
            }
        }
        Ok(RightIdealBasis {
            generators,
            order,
            gb: OnceLock::new(),
        })
    }

    pub fn principal(g: SlicePoly) -> Result<Self> {
        Self::new(vec![g], MonomialOrder::default())
    }

    pub fn generators(&self) -> &[SlicePoly] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.generators[0].nvars()
    }

    /// The reduced right Gröbner basis, tracking cofactors.
    pub fn groebner(&self) -> &Groebner {
        self.gb.get_or_init(|| groebner(&self.generators, &self.order, true))
    }

    pub fn reduced_basis(&self) -> Vec<SlicePoly> {
        self.groebner().basis()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().is_unit()
    }

    pub fn normal_form(&self, p: &SlicePoly) -> SlicePoly {
        self.groebner().normal_form(p)
    }

    pub fn contains(&self, p: &SlicePoly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &RightIdealBasis) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Same right ideal (two-way inclusion).
    pub fn same_ideal(&self, other: &RightIdealBasis) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }
}

/// `target = sum_i generators[i] * cofactors[i]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipCertificate {
    pub target: SlicePoly,
    pub cofactors: Vec<SlicePoly>,
}

impl MembershipCertificate {
    /// Exact recomposition against the given generators.
    pub fn verify(&self, generators: &[SlicePoly]) -> bool {
        if generators.len() != self.cofactors.len() {
            return false;
        }
        let n = self.target.nvars();
        let mut sum = SlicePoly::zero(n);
        for (g, h) in generators.iter().zip(&self.cofactors) {
            match g.star_mul(h) {
                Ok(t) => sum = &sum + &t,
                Err(_) => return false,
            }
        }
        sum == self.target
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    Member(MembershipCertificate),
    /// Nonzero normal form under the reduced basis.
    NonMember(SlicePoly),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

/// Decides `P ∈ I`, with cofactors in the original generators on success.
pub fn member(p: &SlicePoly, ideal: &RightIdealBasis) -> Result<Membership> {
    if p.nvars() != ideal.nvars() {
        return Err(Error::NvarsMismatch {
            left: p.nvars(),
            right: ideal.nvars(),
        });
    }
    let gb = ideal.groebner();
    let red = gb.reduce(p);
    if !red.remainder.is_zero() {
        return Ok(Membership::NonMember(red.remainder));
    }
    let cofactors = gb.lift(&red.cofactors).expect("tracked basis");
    let cert = MembershipCertificate {
        target: p.clone(),
        cofactors,
    };
    if !cert.verify(ideal.generators()) {
        return Err(Error::Verification("membership certificate does not recompose".into()));
    }
    Ok(Membership::Member(cert))
}

/// The default cofactor degree bound of the linear oracle.
pub fn default_oracle_bound(p: &SlicePoly, ideal: &RightIdealBasis) -> u32 {
    let dg = ideal
        .generators()
        .iter()
        .filter_map(SlicePoly::degree)
        .max()
        .unwrap_or(0);
    p.degree().unwrap_or(0) + dg + 2
}

/// All exponents of total degree at most `d`.
pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<MultiIndex> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for x in 0..=(d - used) {
                let mut f = e.clone();
                f.push(x);
                next.push(f);
            }
        }
        out = next;
    }
    out.sort_by_key(|e| (total_degree(e), e.clone()));
    out
}

/// Brute-force membership: is `P = sum g_i * h_i` solvable with
/// `deg h_i <= degree_bound - deg g_i`? Solved as a linear system over `H`.
pub fn member_linear_oracle(p: &SlicePoly, ideal: &RightIdealBasis, degree_bound: u32) -> bool {
    let n = ideal.nvars();
    let rows = monomials_up_to(n, degree_bound);
    let row_of = |e: &MultiIndex| rows.iter().position(|r| r == e);
    let mut cols: Vec<(usize, MultiIndex)> = Vec::new();
    for (i, g) in ideal.generators().iter().enumerate() {
        let dg = g.degree().unwrap_or(0);
        if dg > degree_bound {
            continue;
        }
        for a in monomials_up_to(n, degree_bound - dg) {
            cols.push((i, a));
        }
    }
    if p.degree().unwrap_or(0) > degree_bound {
        return false;
    }
    let mut a = vec![vec![Quaternion::zero(); cols.len()]; rows.len()];
    for (c, (i, alpha)) in cols.iter().enumerate() {
        for (e, coeff) in ideal.generators()[*i].terms() {
            let m: MultiIndex = e.iter().zip(alpha).map(|(x, y)| x + y).collect();
            let r = row_of(&m).expect("within bound");
            a[r][c] = coeff.clone();
        }
    }
    let b: Vec<Quaternion> = rows.iter().map(|e| p.coeff(e)).collect();
    linalg::solve(&a, &b, cols.len()).is_some()
}

/// Evidence that `P` lies in the radical: `(Pa)^{*N}` belongs to
/// `I + (Pa)*I + ... + (Pa)^{*N}*I`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadicalWitness {
    pub p: SlicePoly,
    pub a: Quaternion,
    pub n: u32,
    /// Over the extended generators; absent for an unproven candidate.
    pub certificate: Option<MembershipCertificate>,
}

/// `{g_i} ∪ {(Pa)^{*k} * g_i : 1 <= k <= N}`. Since
/// `(Pa)^{*k} * (g h) = ((Pa)^{*k} * g) * h`, the right ideal they generate
/// is the sum in the radical criterion.
pub fn extended_generators(p: &SlicePoly, a: &Quaternion, n: u32, ideal: &RightIdealBasis) -> Vec<SlicePoly> {
    let pa = p.mul_right(a);
    let mut out: Vec<SlicePoly> = ideal.generators().to_vec();
    let mut power = SlicePoly::one(p.nvars());
    for _ in 0..n {
        power = &power * &pa;
        for g in ideal.generators() {
            let e = &power * g;
            if !e.is_zero() {
                out.push(e);
            }
        }
    }
    out
}

impl RadicalWitness {
    pub fn candidate(p: SlicePoly, a: Quaternion, n: u32) -> Self {
        RadicalWitness {
            p,
            a,
            n,
            certificate: None,
        }
    }

    pub fn target(&self) -> SlicePoly {
        self.p.mul_right(&self.a).star_pow(self.n)
    }
}

/// Tries to prove the criterion for one `(a, N)`.
pub fn radical_witness_find(
    p: &SlicePoly,
    ideal: &RightIdealBasis,
    a: &Quaternion,
    n: u32,
) -> Result<Option<RadicalWitness>> {
    if n == 0 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    let ext = RightIdealBasis::new(extended_generators(p, a, n, ideal), ideal.order().clone())?;
    let target = p.mul_right(a).star_pow(n);
    Ok(match member(&target, &ext)? {
        Membership::Member(cert) => Some(RadicalWitness {
            p: p.clone(),
            a: a.clone(),
            n,
            certificate: Some(cert),
        }),
        Membership::NonMember(_) => None,
    })
}

/// Re-derives the witness: a stored certificate must recompose over the
/// extended generators (else a verification error), and membership is
/// recomputed independently.
pub fn radical_witness_check(w: &RadicalWitness, ideal: &RightIdealBasis) -> Result<bool> {
    if w.n == 0 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    let gens = extended_generators(&w.p, &w.a, w.n, ideal);
    let target = w.target();
    if let Some(cert) = &w.certificate {
        if cert.target != target || !cert.verify(&gens) {
            return Err(Error::Verification(
                "radical witness certificate does not recompose".into(),
            ));
        }
    }
    let ext = RightIdealBasis::new(gens, ideal.order().clone())?;
    let is_member = ext.contains(&target);
    if w.certificate.is_some() && !is_member {
        return Err(Error::Verification(
            "certificate recomposes but membership failed".into(),
        ));
    }
    Ok(is_member)
}

/// Outcome of the bounded radical search for one sample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadicalSample {
    pub a: Quaternion,
    /// Least `N <= N_max` with a witness.
    pub least_n: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadicalReport {
    pub samples: Vec<RadicalSample>,
    pub n_max: u32,
    pub all_succeeded: bool,
    pub note: &'static str,
}

pub const RADICAL_NOTE: &str =
    "evidence only: the criterion quantifies over every quaternion a, and only the listed samples were checked";

pub fn radical_member_bounded(
    p: &SlicePoly,
    ideal: &RightIdealBasis,
    n_max: u32,
    samples: &[Quaternion],
) -> Result<RadicalReport> {
    if samples.is_empty() || n_max == 0 {
        return Err(Error::Domain("need at least one sample and N_max >= 1".into()));
    }
    let mut out = Vec::new();
    for a in samples {
        let mut least = None;
        for n in 1..=n_max {
            if radical_witness_find(p, ideal, a, n)?.is_some() {
                least = Some(n);
                break;
            }
        }
        out.push(RadicalSample {
            a: a.clone(),
            least_n: least,
        });
    }
    let all = out.iter().all(|s| s.least_n.is_some());
    Ok(RadicalReport {
        samples: out,
        n_max,
        all_succeeded: all,
        note: RADICAL_NOTE,
    })
}

/// Seeded random rational quaternions with small numerators and denominators.
pub fn random_quaternions(count: usize, seed: u64) -> Vec<Quaternion> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut c = || rat(rng.gen_range(-9..=9), rng.gen_range(1..=5));
            Quaternion::new(c(), c(), c(), c())
        })
        .filter(|q| !q.is_zero())
        .collect()
}

/// A claimed failure of quasi-primeness: `P*Q ∈ I`, `P ∉ I`, `Q^s ∉ I`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuasiPrimeViolation {
    pub p: SlicePoly,
    pub q: SlicePoly,
    pub inclusion: Option<MembershipCertificate>,
    /// Normal form of `P`.
    pub exclusion_p: SlicePoly,
    /// Normal form of `Q^s`.
    pub exclusion_qs: SlicePoly,
}

/// Per-clause outcome of re-deriving a violation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ViolationCheck {
    pub product_in_ideal: bool,
    pub p_not_in_ideal: bool,
    pub qs_not_in_ideal: bool,
}

impl ViolationCheck {
    pub fn holds(&self) -> bool {
        self.product_in_ideal && self.p_not_in_ideal && self.qs_not_in_ideal
    }

    /// The first clause that fails.
    pub fn failing_clause(&self) -> Option<&'static str> {
        if !self.product_in_ideal {
            Some("P*Q is not in I")
        } else if !self.p_not_in_ideal {
            Some("P is in I")
        } else if !self.qs_not_in_ideal {
            Some("Q^s is in I")
        } else {
            None
        }
    }
}

impl QuasiPrimeViolation {
    /// Gathers the evidence for a pair, whatever the outcome.
    pub fn build(p: &SlicePoly, q: &SlicePoly, ideal: &RightIdealBasis) -> Result<Self> {
        let inclusion = match member(&p.star_mul(q)?, ideal)? {
            Membership::Member(c) => Some(c),
            Membership::NonMember(_) => None,
        };
        Ok(QuasiPrimeViolation {
            p: p.clone(),
            q: q.clone(),
            inclusion,
            exclusion_p: ideal.normal_form(p),
            exclusion_qs: ideal.normal_form(&q.symmetrization()),
        })
    }
}

/// Recomputes all three clauses. Stored evidence that disagrees with the
/// recomputation is a verification error naming the clause.
pub fn quasi_prime_violation_check(v: &QuasiPrimeViolation, ideal: &RightIdealBasis) -> Result<ViolationCheck> {
    let product = v.p.star_mul(&v.q)?;
    let product_in = ideal.contains(&product);
    if let Some(cert) = &v.inclusion {
        if cert.target != product || !cert.verify(ideal.generators()) {
            return Err(Error::Verification(
                "clause P*Q ∈ I: certificate does not recompose".into(),
            ));
        }
    }
    let nf_p = ideal.normal_form(&v.p);
    if nf_p != v.exclusion_p {
        return Err(Error::Verification("clause P ∉ I: stored normal form disagrees".into()));
    }
    let nf_qs = ideal.normal_form(&v.q.symmetrization());
    if nf_qs != v.exclusion_qs {
        return Err(Error::Verification(
            "clause Q^s ∉ I: stored normal form disagrees".into(),
        ));
    }
    Ok(ViolationCheck {
        product_in_ideal: product_in && v.inclusion.is_some(),
        p_not_in_ideal: !nf_p.is_zero(),
        qs_not_in_ideal: !nf_qs.is_zero(),
    })
}

pub fn quasi_prime_violation_verify(v: &QuasiPrimeViolation, ideal: &RightIdealBasis) -> Result<bool> {
    Ok(quasi_prime_violation_check(v, ideal)?.holds())
}

/// Search limits for quasi-prime violations.
#[derive(Clone, Debug)]
pub struct SearchLimits {
    pub max_degree: u32,
    pub coefficients: Vec<Quaternion>,
    /// Random candidates `P` tried in several variables.
    pub random_candidates: usize,
    /// Cap on systematically enumerated candidates `P` in several variables.
    pub max_enumerated: usize,
    pub seed: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_degree: 3,
            coefficients: small_coefficients(),
            random_candidates: 200,
            max_enumerated: 2000,
            seed: 0,
        }
    }
}

/// `{0, ±1, ±i, ±j, ±k}`.
pub fn small_coefficients() -> Vec<Quaternion> {
    let mut v = vec![Quaternion::zero()];
    for u in [Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()] {
        v.push(u.clone());
        v.push(-u);
    }
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub found: Option<QuasiPrimeViolation>,
    /// Candidates `P` examined (after removing duplicates modulo `I`).
    pub candidates_examined: usize,
    pub exhaustive_over_q: bool,
    pub note: &'static str,
}

pub const SEARCH_NOTE: &str = "bounded search: finding nothing does not prove the ideal quasi prime";

/// Kernel of `Q -> NF(P*Q)` over `Q` supported on `monos`.
fn annihilating_cofactors(p: &SlicePoly, ideal: &RightIdealBasis, monos: &[MultiIndex]) -> Vec<SlicePoly> {
    let n = p.nvars();
    let images: Vec<SlicePoly> = monos
        .iter()
        .map(|m| ideal.normal_form(&p.mul_monomial(m, &Quaternion::one())))
        .collect();
    let mut rows: Vec<MultiIndex> = images.iter().flat_map(|f| f.terms().map(|(e, _)| e.clone())).collect();
    rows.sort();
    rows.dedup();
    let a: Vec<Vec<Quaternion>> = rows
        .iter()
        .map(|e| images.iter().map(|f| f.coeff(e)).collect())
        .collect();
    linalg::kernel(&a, monos.len())
        .into_iter()
        .map(|u| SlicePoly::from_terms(n, monos.iter().cloned().zip(u)))
        .collect()
}

/// In one variable `{Q : P*Q ∈ I}` is a principal right ideal; its monic
/// generator `Q0` has degree at most that of the generator of `I`, and every
/// such `Q = Q0*H` has `Q^s = Q0^s H^s`. So `P` is part of a violation iff
/// `Q0^s ∉ I`.
fn minimal_cofactor(p: &SlicePoly, ideal: &RightIdealBasis) -> Option<SlicePoly> {
    let dg = ideal
        .reduced_basis()
        .iter()
        .filter_map(SlicePoly::degree)
        .max()
        .unwrap_or(0);
    for d in 0..=dg {
        let monos: Vec<MultiIndex> = (0..=d).map(|l| vec![l]).collect();
        if let Some(q) = annihilating_cofactors(p, ideal, &monos)
            .into_iter()
            .find(|q| q.degree() == Some(d))
        {
            return Some(q);
        }
    }
    None
}

fn enumerate_polys(
    nvars: usize,
    max_degree: u32,
    coeffs: &[Quaternion],
    max_terms: usize,
    cap: usize,
) -> Vec<SlicePoly> {
    let monos = monomials_up_to(nvars, max_degree);
    let nonzero: Vec<&Quaternion> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    let mut out = Vec::new();
    if nvars == 1 && max_terms >= monos.len() {
        // every coefficient vector
        let base = coeffs.len();
        let total = base.pow(monos.len() as u32);
        for mut code in 0..total {
            let mut terms = Vec::new();
            for m in &monos {
                terms.push((m.clone(), coeffs[code % base].clone()));
                code /= base;
            }
            let p = SlicePoly::from_terms(nvars, terms);
            if !p.is_zero() {
                out.push(p);
            }
        }
        return out;
    }
    'outer: for a in 0..monos.len() {
        for c in &nonzero {
            out.push(SlicePoly::monomial(nvars, monos[a].clone(), (*c).clone()));
            if out.len() >= cap {
                break 'outer;
            }
        }
        if max_terms < 2 {
            continue;
        }
        for b in a + 1..monos.len() {
            for c in &nonzero {
                for d in &nonzero {
                    out.push(SlicePoly::from_terms(
                        nvars,
                        [(monos[a].clone(), (*c).clone()), (monos[b].clone(), (*d).clone())],
                    ));
                    if out.len() >= cap {
                        break 'outer;
                    }
                }
            }
        }
    }
    out
}

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32, coeffs: &[Quaternion]) -> SlicePoly {
    let monos = monomials_up_to(nvars, max_degree);
    SlicePoly::from_terms(
        nvars,
        monos
            .into_iter()
            .map(|m| (m, coeffs[rng.gen_range(0..coeffs.len())].clone())),
    )
}

/// Looks for a verified violation among user pairs, then among candidates
/// `P` paired with cofactors `Q` from the kernel of `Q -> NF(P*Q)`.
///
/// In one variable every `P` with coefficients in the set and degree at most
/// the bound is tried, against all `Q` at once (see [`minimal_cofactor`]).
/// In several variables candidates are enumerated up to a cap, plus random
/// ones, and `Q` ranges over a kernel basis in degree at most the bound.
pub fn quasi_prime_search_bounded(
    ideal: &RightIdealBasis,
    user_pairs: &[(SlicePoly, SlicePoly)],
    limits: &SearchLimits,
) -> Result<SearchReport> {
    let mut examined = 0;
    let report = |found, examined, exhaustive| SearchReport {
        found,
        candidates_examined: examined,
        exhaustive_over_q: exhaustive,
        note: SEARCH_NOTE,
    };
    for (p, q) in user_pairs {
        examined += 1;
        let v = QuasiPrimeViolation::build(p, q, ideal)?;
        if quasi_prime_violation_verify(&v, ideal)? {
            return Ok(report(Some(v), examined, false));
        }
    }
    if ideal.is_unit() {
        return Ok(report(None, examined, true));
    }
    let n = ideal.nvars();
    let mut seen: HashSet<SlicePoly> = HashSet::new();
    if n == 1 {
        let mut tried: HashSet<SlicePoly> = HashSet::new();
        for p in enumerate_polys(1, limits.max_degree, &limits.coefficients, usize::MAX, usize::MAX) {
            let nf = ideal.normal_form(&p);
            if nf.is_zero() || !seen.insert(nf.clone()) {
                continue;
            }
            examined += 1;
            let Some(q) = minimal_cofactor(&nf, ideal) else {
                continue;
            };
            // only Q0^s ∉ I can give a violation; certificates are built after
            if !tried.insert(q.clone()) || ideal.normal_form(&q.symmetrization()).is_zero() {
                continue;
            }
            let v = QuasiPrimeViolation::build(&p, &q, ideal)?;
            if quasi_prime_violation_verify(&v, ideal)? {
                return Ok(report(Some(v), examined, true));
            }
        }
        return Ok(report(None, examined, true));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
    let mut pool = enumerate_polys(
        n,
        limits.max_degree.min(2),
        &limits.coefficients,
        2,
        limits.max_enumerated,
    );
    for _ in 0..limits.random_candidates {
        pool.push(random_poly(&mut rng, n, limits.max_degree, &limits.coefficients));
    }
    let monos = monomials_up_to(n, limits.max_degree);
    for p in pool {
        let nf = ideal.normal_form(&p);
        if nf.is_zero() || !seen.insert(nf.clone()) {
            continue;
        }
        examined += 1;
        for q in annihilating_cofactors(&nf, ideal, &monos) {
            let v = QuasiPrimeViolation::build(&p, &q, ideal)?;
            if quasi_prime_violation_verify(&v, ideal)? {
                return Ok(report(Some(v), examined, false));
            }
        }
    }
    Ok(report(None, examined, false))
}

/// A right ideal contained in the symmetrized ideal `<P^s : P ∈ I>`.
#[derive(Clone, Debug)]
pub struct SymmetrizedIdeal {
    pub ideal: RightIdealBasis,
    /// True when the ideal is the whole symmetrized ideal (principal case).
    pub exact: bool,
}

/// Principal `I = <g>` gives `<g^s>` exactly, since `(g*h)^s = g^s * h^s`
/// with `h^s` real and central. Otherwise the generators `(sum g_i * m_i)^s`
/// over monomials `m_i` of degree at most `degree_bound` (or zero) give an
/// inner approximation, returned through its reduced basis.
pub fn symmetrized_ideal(ideal: &RightIdealBasis, degree_bound: u32) -> Result<SymmetrizedIdeal> {
    let basis = ideal.reduced_basis();
    let order = ideal.order().clone();
    if basis.len() == 1 {
        let g = basis[0].symmetrization();
        return Ok(SymmetrizedIdeal {
            ideal: RightIdealBasis::new(vec![g], order)?,
            exact: true,
        });
    }
    let n = ideal.nvars();
    let gens = ideal.generators();
    let mut choices: Vec<Option<MultiIndex>> = vec![None];
    choices.extend(monomials_up_to(n, degree_bound).into_iter().map(Some));
    let mut out: Vec<SlicePoly> = Vec::new();
    let total = choices.len().pow(gens.len() as u32);
    for mut code in 1..total {
        let mut sum = SlicePoly::zero(n);
        for g in gens {
            if let Some(m) = &choices[code % choices.len()] {
                sum = &sum + &g.mul_monomial(m, &Quaternion::one());
            }
            code /= choices.len();
        }
        if !sum.is_zero() {
            out.push(sum.symmetrization());
        }
    }
    out.sort_by_key(|p| (p.degree(), p.num_terms()));
    out.dedup();
    let gb = groebner(&out, &order, false);
    Ok(SymmetrizedIdeal {
        ideal: RightIdealBasis::new(gb.basis(), order)?,
        exact: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_poly;

    fn ideal(gens: &[&str], n: usize) -> RightIdealBasis {
        RightIdealBasis::new(
            gens.iter().map(|s| parse_poly(s, n).unwrap()).collect(),
            MonomialOrder::default(),
        )
        .unwrap()
    }

    fn p(s: &str, n: usize) -> SlicePoly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn membership_two_spheres() {
        let i = ideal(&["q1^2 + 1", "q2^2 + 1"], 2);
        match member(&p("q1^2 - q2^2", 2), &i).unwrap() {
            Membership::Member(c) => {
                assert_eq!(c.cofactors, vec![SlicePoly::one(2), -SlicePoly::one(2)]);
                assert!(c.verify(i.generators()));
            }
            other => panic!("{other:?}"),
        }
        assert!(!member(&p("q1 - q2", 2), &i).unwrap().is_member());
        let sym = p("q1 + q2", 2).symmetrization();
        assert_eq!(member(&sym, &i).unwrap(), Membership::NonMember(p("2 q1 q2 - 2", 2)));
        let nf = p("2 q1 q2 - 2", 2);
        assert_eq!(
            nf.eval(&[Quaternion::i(), Quaternion::i()]).unwrap(),
            Quaternion::from_ints(-4, 0, 0, 0)
        );
    }

    #[test]
    fn oracle_examples() {
        let i = ideal(&["q1^2 + 1", "q2^2 + 1"], 2);
        for (s, want) in [("q1^2 - q2^2", true), ("q1 - q2", false), ("(q1 + q2)^2", false)] {
            let t = p(s, 2);
            assert_eq!(member_linear_oracle(&t, &i, default_oracle_bound(&t, &i)), want, "{s}");
        }
        let sq = ideal(&["q^2"], 1);
        assert!(!member_linear_oracle(&p("q i + j", 1), &sq, 3));
        let u = ideal(&["q - i", "q - j"], 1);
        assert!(member_linear_oracle(&SlicePoly::one(1), &u, 2));
    }

    #[test]
    fn radical_witnesses() {
        let i = ideal(&["(q+1)^2"], 1);
        let a = Quaternion::from_ints(1, 1, 0, -1);
        let w = radical_witness_find(&p("q + 1", 1), &i, &a, 2).unwrap().unwrap();
        assert!(radical_witness_check(&w, &i).unwrap());
        assert_eq!(w.target(), p("(q+1)^2", 1).mul_right(&(&a * &a)));
        assert!(radical_witness_find(&p("q + 1", 1), &i, &a, 1).unwrap().is_none());
        assert!(!radical_witness_check(&RadicalWitness::candidate(p("q + 1", 1), a.clone(), 1), &i).unwrap());
        let inside = RadicalWitness::candidate(p("(q+1)^2 (2 - j)", 1), a.clone(), 1);
        assert!(radical_witness_check(&inside, &i).unwrap());
        let mut bad = w.clone();
        bad.certificate.as_mut().unwrap().cofactors[0] = SlicePoly::zero(1);
        assert!(matches!(radical_witness_check(&bad, &i), Err(Error::Verification(_))));
    }

    #[test]
    fn radical_report_for_unit_in_proper_ideal() {
        let i = ideal(&["(q+1)^2"], 1);
        let r = radical_member_bounded(&SlicePoly::one(1), &i, 3, &random_quaternions(5, 1)).unwrap();
        assert!(r.samples.iter().all(|s| s.least_n.is_none()));
        assert!(!r.all_succeeded);
    }

    #[test]
    fn violation_examples() {
        let cube = ideal(&["(q+1)^3"], 1);
        let v = QuasiPrimeViolation::build(&p("(q+1)^2", 1), &p("q + 1", 1), &cube).unwrap();
        assert!(quasi_prime_violation_verify(&v, &cube).unwrap());
        let two = ideal(&["q1^2 + 1", "q2^2 + 1"], 2);
        let v = QuasiPrimeViolation::build(&p("q1 - q2", 2), &p("q1 + q2", 2), &two).unwrap();
        assert!(quasi_prime_violation_verify(&v, &two).unwrap());
        let sq = ideal(&["(q+1)^2"], 1);
        let v = QuasiPrimeViolation::build(&p("q + 1", 1), &p("q + 1", 1), &sq).unwrap();
        let check = quasi_prime_violation_check(&v, &sq).unwrap();
        assert_eq!(check.failing_clause(), Some("Q^s is in I"));
        let mut forged = v.clone();
        forged.exclusion_qs = SlicePoly::one(1);
        assert!(matches!(
            quasi_prime_violation_verify(&forged, &sq),
            Err(Error::Verification(_))
        ));
    }

    #[test]
    fn search_examples() {
        let two = ideal(&["q1^2 + 1", "q2^2 + 1"], 2);
        let pairs = vec![(p("q1 - q2", 2), p("q1 + q2", 2))];
        let r = quasi_prime_search_bounded(&two, &pairs, &SearchLimits::default()).unwrap();
        assert_eq!(r.found.unwrap().p, p("q1 - q2", 2));
        let unit = ideal(&["q - i", "q - j"], 1);
        assert!(quasi_prime_search_bounded(&unit, &[], &SearchLimits::default())
            .unwrap()
            .found
            .is_none());
        let cube = ideal(&["(q+1)^3"], 1);
        // (q+1)^2 (q-1) = q^3 + q^2 - q - 1 pairs with q + 1
        let found = quasi_prime_search_bounded(&cube, &[], &SearchLimits::default())
            .unwrap()
            .found
            .unwrap();
        assert!(quasi_prime_violation_verify(&found, &cube).unwrap());
    }

    #[test]
    fn symmetrized_examples() {
        let s = symmetrized_ideal(&ideal(&["q - i"], 1), 2).unwrap();
        assert!(s.exact);
        assert_eq!(s.ideal.generators(), &[p("q^2 + 1", 1)]);
        let s = symmetrized_ideal(&ideal(&["(q+1)^2"], 1), 2).unwrap();
        assert_eq!(s.ideal.generators(), &[p("(q+1)^4", 1)]);
        let two = ideal(&["q1^2 + 1", "q2^2 + 1"], 2);
        let s = symmetrized_ideal(&two, 1).unwrap();
        assert!(!s.exact);
        for g in [
            p("(q1^2 + 1)^2", 2),
            p("(q2^2 + 1)^2", 2),
            p("q1^2 + q2^2 + 2", 2).symmetrization(),
        ] {
            assert!(s.ideal.contains(&g));
        }
        for g in s.ideal.generators() {
            assert!(two.contains(g));
        }
    }
}
