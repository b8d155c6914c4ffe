//! The ring of slice regular polynomials `H[q1, ..., qn]` under the star product.
//!
//! A polynomial is stored in normal form `sum q1^l1 ... qn^ln a_l`, the
//! quaternionic coefficient always to the right of the monomial. Variables
//! are central for the star product, so `(q^m a) * (q^l b) = q^(m+l) ab`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::Quaternion;
use crate::rational::int;

/// Exponent vector `(l1, ..., ln)`.
pub type MultiIndex = Vec<u32>;

pub fn total_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// `a` divides `b` componentwise.
pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> MultiIndex {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn quotient(b: &[u32], a: &[u32]) -> MultiIndex {
    a.iter().zip(b).map(|(x, y)| y - x).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Degrevlex,
    Lex,
}

/// A monomial order. `perm[r]` is the variable ranked `r`-th (rank 0 is the
/// largest); an empty permutation means `q1 > q2 > ... > qn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Vec<usize>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::degrevlex()
    }
}

impl MonomialOrder {
    pub fn degrevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::Degrevlex,
            perm: Vec::new(),
        }
    }

    pub fn lex() -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            perm: Vec::new(),
        }
    }

    pub fn with_perm(kind: OrderKind, perm: Vec<usize>) -> Result<Self> {
        let mut seen = perm.clone();
        seen.sort_unstable();
        if seen.iter().enumerate().any(|(i, v)| i != *v) {
            return Err(Error::Domain(format!("not a permutation: {perm:?}")));
        }
        Ok(MonomialOrder { kind, perm })
    }

    fn var_at(&self, rank: usize) -> usize {
        if self.perm.is_empty() {
            rank
        } else {
            self.perm[rank]
        }
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let n = a.len();
        match self.kind {
            OrderKind::Lex => {
                for r in 0..n {
                    let v = self.var_at(r);
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Degrevlex => {
                match total_degree(a).cmp(&total_degree(b)) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for r in (0..n).rev() {
                    let v = self.var_at(r);
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// An element of `H[q1, ..., qn]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlicePoly {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Quaternion>,
}

impl SlicePoly {
    pub fn zero(nvars: usize) -> Self {
        SlicePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Quaternion) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Quaternion::one())
    }

    /// The variable `q_{k+1}` (zero-based `k`).
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Self::monomial(nvars, e, Quaternion::one())
    }

    pub fn monomial(nvars: usize, exp: MultiIndex, c: Quaternion) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length must equal nvars");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        SlicePoly { nvars, terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, Quaternion)>) -> Self {
        let mut p = SlicePoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length must equal nvars");
            p.add_term(e, &c);
        }
        p
    }

    /// Univariate polynomial from coefficients in ascending degree.
    pub fn univariate(coeffs: impl IntoIterator<Item = Quaternion>) -> Self {
        SlicePoly::from_terms(1, coeffs.into_iter().enumerate().map(|(d, c)| (vec![d as u32], c)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Quaternion)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u32]) -> Quaternion {
        self.terms.get(exp).cloned().unwrap_or_else(Quaternion::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Quaternion::is_real)
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Quaternion> {
        match self.terms.len() {
            0 => Some(Quaternion::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|x| *x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, exp: MultiIndex, c: &Quaternion) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c.clone());
            }
        }
    }

    pub(crate) fn sub_term(&mut self, exp: MultiIndex, c: &Quaternion) {
        self.add_term(exp, &-c);
    }

    fn check_nvars(&self, other: &SlicePoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    /// Leading `(exponent, coefficient)` under `order`.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&MultiIndex, &Quaternion)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted in decreasing order.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&MultiIndex, &Quaternion)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    /// The star product `self * other`, checking variable counts.
    pub fn star_mul(&self, other: &SlicePoly) -> Result<SlicePoly> {
        self.check_nvars(other)?;
        Ok(self.star_mul_unchecked(other))
    }

    fn star_mul_unchecked(&self, other: &SlicePoly) -> SlicePoly {
        let mut out = SlicePoly::zero(self.nvars);
        for (e1, a) in &self.terms {
            for (e2, b) in &other.terms {
                let e: MultiIndex = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.add_term(e, &(a * b));
            }
        }
        out
    }

    /// `self * (q^shift c)`.
    pub fn mul_monomial(&self, shift: &[u32], c: &Quaternion) -> SlicePoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, a)| (e.iter().zip(shift).map(|(x, y)| x + y).collect::<MultiIndex>(), a * c))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        SlicePoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// `self * c` for a constant `c`.
    pub fn mul_right(&self, c: &Quaternion) -> SlicePoly {
        self.mul_monomial(&vec![0; self.nvars], c)
    }

    /// `c * self` for a constant `c`.
    pub fn mul_left(&self, c: &Quaternion) -> SlicePoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, a)| (e.clone(), c * a))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        SlicePoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn star_pow(&self, e: u32) -> SlicePoly {
        let mut acc = SlicePoly::one(self.nvars);
        for _ in 0..e {
            acc = acc.star_mul_unchecked(self);
        }
        acc
    }

    /// Regular conjugate: every coefficient conjugated.
    pub fn regular_conj(&self) -> SlicePoly {
        let terms = self.terms.iter().map(|(e, a)| (e.clone(), a.conj())).collect();
        SlicePoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Symmetrization `P * P^c`; always real-coefficient.
    pub fn symmetrization(&self) -> SlicePoly {
        self.star_mul_unchecked(&self.regular_conj())
    }

    /// Pointwise value: each monomial is evaluated as
    /// `a1^l1 a2^l2 ... an^ln coeff`, in that order.
    pub fn eval(&self, point: &[Quaternion]) -> Result<Quaternion> {
        if point.len() != self.nvars {
            return Err(Error::NvarsMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut powers: Vec<Vec<Quaternion>> = Vec::with_capacity(self.nvars);
        for (k, a) in point.iter().enumerate() {
            let d = self.degree_in(k) as usize;
            let mut v = Vec::with_capacity(d + 1);
            v.push(Quaternion::one());
            for l in 1..=d {
                let next = &v[l - 1] * a;
                v.push(next);
            }
            powers.push(v);
        }
        let mut acc = Quaternion::zero();
        for (e, c) in &self.terms {
            let mut m = Quaternion::one();
            for (k, l) in e.iter().enumerate() {
                if *l > 0 {
                    m = &m * &powers[k][*l as usize];
                }
            }
            acc += &(&m * c);
        }
        Ok(acc)
    }

    /// Replaces `q_{k+1}` by the constant `value`, placing `value^l` to the
    /// left of each coefficient. This agrees with evaluation whenever `value`
    /// commutes with the remaining variables' values.
    pub fn substitute(&self, k: usize, value: &Quaternion) -> SlicePoly {
        let mut powers = vec![Quaternion::one()];
        for l in 1..=self.degree_in(k) as usize {
            let next = &powers[l - 1] * value;
            powers.push(next);
        }
        let mut out = SlicePoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let l = e2[k] as usize;
            e2[k] = 0;
            out.add_term(e2, &(&powers[l] * c));
        }
        out
    }

    /// Formal partial derivative in `q_{k+1}`.
    pub fn derivative(&self, k: usize) -> SlicePoly {
        let mut out = SlicePoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[k] > 0 {
                let mut e2 = e.clone();
                e2[k] -= 1;
                out.add_term(e2, &c.scale(&int(e[k] as i64)));
            }
        }
        out
    }

    /// Drops to a polynomial in fewer variables when only the kept ones occur.
    pub fn restrict_vars(&self, keep: &[usize]) -> Option<SlicePoly> {
        let mut out = SlicePoly::zero(keep.len());
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(v, x)| *x > 0 && !keep.contains(&v)) {
                return None;
            }
            out.add_term(keep.iter().map(|v| e[*v]).collect(), c);
        }
        Some(out)
    }

    /// Embeds into a larger variable set, variable `v` mapping to `targets[v]`.
    pub fn embed(&self, nvars: usize, targets: &[usize]) -> SlicePoly {
        let mut out = SlicePoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (v, x) in e.iter().enumerate() {
                e2[targets[v]] += x;
            }
            out.add_term(e2, c);
        }
        out
    }

    /// Variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|k| self.terms.keys().any(|e| e[*k] > 0))
            .collect()
    }

    pub fn map_coeffs(&self, f: impl Fn(&Quaternion) -> Quaternion) -> SlicePoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        SlicePoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// JSON form with terms sorted by `order` (decreasing).
    pub fn to_json(&self, order: &MonomialOrder) -> PolyJson {
        PolyJson {
            nvars: self.nvars,
            terms: self
                .sorted_terms(order)
                .into_iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<SlicePoly> {
        if j.nvars == 0 {
            return Err(Error::Domain("nvars must be positive".into()));
        }
        let mut p = SlicePoly::zero(j.nvars);
        for t in &j.terms {
            if t.exp.len() != j.nvars {
                return Err(Error::NvarsMismatch {
                    left: j.nvars,
                    right: t.exp.len(),
                });
            }
            p.add_term(t.exp.clone(), &t.coeff);
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: MultiIndex,
    pub coeff: Quaternion,
}

/// `{ "nvars": n, "terms": [ { "exp": [..], "coeff": [w, x, y, z] } ] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

impl Serialize for SlicePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json(&MonomialOrder::default()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SlicePoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        SlicePoly::from_json(&j).map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a SlicePoly> for &'a SlicePoly {
    type Output = SlicePoly;
    fn add(self, o: &SlicePoly) -> SlicePoly {
        self.check_nvars(o).expect("nvars mismatch in addition");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a SlicePoly> for &'a SlicePoly {
    type Output = SlicePoly;
    fn sub(self, o: &SlicePoly) -> SlicePoly {
        self.check_nvars(o).expect("nvars mismatch in subtraction");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.sub_term(e.clone(), c);
        }
        out
    }
}

/// Star product. Panics on mismatched variable counts; use
/// [`SlicePoly::star_mul`] for a checked version.
impl<'a> Mul<&'a SlicePoly> for &'a SlicePoly {
    type Output = SlicePoly;
    fn mul(self, o: &SlicePoly) -> SlicePoly {
        self.star_mul(o).expect("nvars mismatch in star product")
    }
}

impl Neg for &SlicePoly {
    type Output = SlicePoly;
    fn neg(self) -> SlicePoly {
        self.map_coeffs(|c| -c)
    }
}

impl Add for SlicePoly {
    type Output = SlicePoly;
    fn add(self, o: SlicePoly) -> SlicePoly {
        &self + &o
    }
}

impl Sub for SlicePoly {
    type Output = SlicePoly;
    fn sub(self, o: SlicePoly) -> SlicePoly {
        &self - &o
    }
}

impl Mul for SlicePoly {
    type Output = SlicePoly;
    fn mul(self, o: SlicePoly) -> SlicePoly {
        &self * &o
    }
}

impl Neg for SlicePoly {
    type Output = SlicePoly;
    fn neg(self) -> SlicePoly {
        -&self
    }
}

impl fmt::Display for SlicePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::format_poly(self, &MonomialOrder::default()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_poly;

    fn p(s: &str, n: usize) -> SlicePoly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn monomial_rule() {
        let a = SlicePoly::monomial(1, vec![1], Quaternion::i());
        let b = SlicePoly::monomial(1, vec![1], Quaternion::j());
        assert_eq!(&a * &b, SlicePoly::monomial(1, vec![2], Quaternion::k()));
    }

    #[test]
    fn expansion_of_linear_factors() {
        // (q + 1) * (q - i) = q^2 + q (1 - i) - i
        let lhs = &p("q + 1", 1) * &p("q - i", 1);
        let expected = SlicePoly::univariate([-Quaternion::i(), Quaternion::from_ints(1, -1, 0, 0), Quaternion::one()]);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(p("q^2 i + q j + 1", 1).regular_conj(), p("-q^2 i - q j + 1", 1));
        let r = p("3q^2 - 1/2", 1);
        assert_eq!(r.regular_conj(), r);
    }

    #[test]
    fn symmetrization_examples() {
        assert_eq!(p("q - i", 1).symmetrization(), p("q^2 + 1", 1));
        assert_eq!(p("q + 1", 1).symmetrization(), p("(q + 1)^2", 1));
        assert_eq!(p("q1 + q2", 2).symmetrization(), p("q1^2 + 2 q1 q2 + q2^2", 2));
    }

    #[test]
    fn evaluation_examples() {
        assert!(p("q^2 + 1", 1).eval(&[Quaternion::j()]).unwrap().is_zero());
        assert_eq!(
            p("q1 q2", 2).eval(&[Quaternion::i(), Quaternion::j()]).unwrap(),
            Quaternion::k()
        );
        let ii = [Quaternion::i(), Quaternion::i()];
        assert!(p("q1^2 - q2^2", 2).eval(&ii).unwrap().is_zero());
        assert!(p("q1", 2).eval(&[Quaternion::i()]).is_err());
    }

    #[test]
    fn constants_commute_with_variables() {
        let c = SlicePoly::constant(2, Quaternion::from_ints(1, 2, -1, 3));
        let q = SlicePoly::var(2, 1);
        assert_eq!(&c * &q, &q * &c);
    }

    #[test]
    fn nvars_mismatch_is_an_error() {
        assert!(matches!(
            SlicePoly::one(1).star_mul(&SlicePoly::one(2)),
            Err(Error::NvarsMismatch { .. })
        ));
    }

    #[test]
    fn orders() {
        let o = MonomialOrder::degrevlex();
        assert_eq!(o.cmp(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 3], &[1, 1]), Ordering::Greater);
        // degrevlex: x y^2 < x^2 z style tie-break on last variable
        assert_eq!(o.cmp(&[1, 1, 0], &[1, 0, 1]), Ordering::Greater);
        let l = MonomialOrder::lex();
        assert_eq!(l.cmp(&[1, 0], &[0, 5]), Ordering::Greater);
        let rev = MonomialOrder::with_perm(OrderKind::Lex, vec![1, 0]).unwrap();
        assert_eq!(rev.cmp(&[1, 0], &[0, 5]), Ordering::Less);
        assert!(MonomialOrder::with_perm(OrderKind::Lex, vec![0, 0]).is_err());
    }

    #[test]
    fn json_shape() {
        let poly = p("q1^2 k + 2", 2);
        let s = serde_json::to_string(&poly).unwrap();
        assert_eq!(
            s,
            r#"{"nvars":2,"terms":[{"exp":[2,0],"coeff":["0","0","0","1"]},{"exp":[0,0],"coeff":["2","0","0","0"]}]}"#
        );
        let back: SlicePoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, poly);
    }
}
