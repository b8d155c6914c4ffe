//! Right Gröbner bases in `H[q1, ..., qn]`.
//!
//! Variables are central and coefficients form a division ring, so a right
//! ideal is closed under `P -> P * (q^d c)` and leading monomials behave as
//! in the commutative case. Reduction of `P` by a monic `g` whose leading
//! monomial divides a term `q^m c` of `P` subtracts `g * (q^(m - lm g) c)`.
//! S-polynomials of monic `g, h` are `g * q^(L - lm g) - h * q^(L - lm h)`.
//! The coprime-leading-monomial criterion does not carry over (coefficients
//! do not commute), so only the chain criterion is used.

use std::cmp::Ordering;

use crate::poly::{divides, lcm, quotient, total_degree, MonomialOrder, MultiIndex, SlicePoly};
use crate::quat::Quaternion;

#[derive(Clone, Debug)]
struct Elem {
    poly: SlicePoly,
    lm: MultiIndex,
    /// `poly = sum_i gens[i] * rep[i]` when tracking.
    rep: Option<Vec<SlicePoly>>,
}

/// A reduced right Gröbner basis, optionally expressed in the generators.
#[derive(Clone, Debug)]
pub struct Groebner {
    order: MonomialOrder,
    nvars: usize,
    ngens: usize,
    elems: Vec<Elem>,
}

/// Result of dividing by a basis: `p = sum_j basis[j] * cofactors[j] + remainder`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub remainder: SlicePoly,
    pub cofactors: Vec<SlicePoly>,
}

fn make_monic(p: &SlicePoly, order: &MonomialOrder) -> (SlicePoly, Quaternion) {
    let (_, lc) = p.leading_term(order).expect("nonzero");
    let inv = lc.inverse().expect("nonzero leading coefficient");
    (p.mul_right(&inv), inv)
}

fn reduce_by(p: &SlicePoly, elems: &[Elem], order: &MonomialOrder, skip: Option<usize>) -> Reduction {
    let n = p.nvars();
    let mut rest = p.clone();
    let mut remainder = SlicePoly::zero(n);
    let mut cofactors = vec![SlicePoly::zero(n); elems.len()];
    while let Some((m, c)) = rest.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        let hit = elems
            .iter()
            .enumerate()
            .find(|(j, e)| Some(*j) != skip && divides(&e.lm, &m));
        match hit {
            Some((j, e)) => {
                let shift = quotient(&m, &e.lm);
                rest = &rest - &e.poly.mul_monomial(&shift, &c);
                cofactors[j].add_term(shift, &c);
            }
            None => {
                rest.sub_term(m.clone(), &c);
                remainder.add_term(m, &c);
            }
        }
    }
    Reduction { remainder, cofactors }
}

fn combine_reps(base: &[SlicePoly], elems: &[Elem], cofactors: &[SlicePoly]) -> Vec<SlicePoly> {
    let mut out = base.to_vec();
    for (e, cof) in elems.iter().zip(cofactors) {
        if cof.is_zero() {
            continue;
        }
        let rep = e.rep.as_ref().expect("tracked");
        for (o, r) in out.iter_mut().zip(rep) {
            if !r.is_zero() {
                *o = &*o - &(r * cof);
            }
        }
    }
    out
}

fn cmp_pairs(order: &MonomialOrder, a: &MultiIndex, b: &MultiIndex) -> Ordering {
    total_degree(a).cmp(&total_degree(b)).then_with(|| order.cmp(a, b))
}

/// Buchberger's algorithm with the chain criterion and normal selection.
pub fn groebner(gens: &[SlicePoly], order: &MonomialOrder, track: bool) -> Groebner {
    let nvars = gens.first().map(SlicePoly::nvars).unwrap_or(1);
    let ngens = gens.len();
    let mut elems: Vec<Elem> = Vec::new();
    let mut pairs: Vec<(usize, usize, MultiIndex)> = Vec::new();
    let unit = |i: usize, c: &Quaternion| {
        (0..ngens)
            .map(|k| {
                if k == i {
                    SlicePoly::constant(nvars, c.clone())
                } else {
                    SlicePoly::zero(nvars)
                }
            })
            .collect::<Vec<_>>()
    };

    let add = |elems: &mut Vec<Elem>,
               pairs: &mut Vec<(usize, usize, MultiIndex)>,
               poly: SlicePoly,
               rep: Option<Vec<SlicePoly>>| {
        let (poly, inv) = make_monic(&poly, order);
        let rep = rep.map(|r| r.iter().map(|x| x.mul_right(&inv)).collect());
        let lm = poly.leading_term(order).expect("nonzero").0.clone();
        let k = elems.len();
        for (i, e) in elems.iter().enumerate() {
            pairs.push((i, k, lcm(&e.lm, &lm)));
        }
        elems.push(Elem { poly, lm, rep });
    };

    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let rep = track.then(|| unit(i, &Quaternion::one()));
        add(&mut elems, &mut pairs, g.clone(), rep);
    }

    let mut done: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    while !pairs.is_empty() {
        if elems.iter().any(|e| e.lm.iter().all(|x| *x == 0)) {
            break;
        }
        let best = (0..pairs.len())
            .min_by(|a, b| cmp_pairs(order, &pairs[*a].2, &pairs[*b].2))
            .unwrap();
        let (i, j, l) = pairs.swap_remove(best);
        let chain = (0..elems.len()).any(|k| {
            k != i
                && k != j
                && divides(&elems[k].lm, &l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        done.insert((i, j));
        if chain {
            continue;
        }
        let one = Quaternion::one();
        let si = quotient(&l, &elems[i].lm);
        let sj = quotient(&l, &elems[j].lm);
        let s = &elems[i].poly.mul_monomial(&si, &one) - &elems[j].poly.mul_monomial(&sj, &one);
        if s.is_zero() {
            continue;
        }
        let red = reduce_by(&s, &elems, order, None);
        if red.remainder.is_zero() {
            continue;
        }
        let rep = track.then(|| {
            let ri = elems[i].rep.as_ref().unwrap();
            let rj = elems[j].rep.as_ref().unwrap();
            let base: Vec<SlicePoly> = ri
                .iter()
                .zip(rj)
                .map(|(a, b)| &a.mul_monomial(&si, &one) - &b.mul_monomial(&sj, &one))
                .collect();
            combine_reps(&base, &elems, &red.cofactors)
        });
        add(&mut elems, &mut pairs, red.remainder, rep);
    }

    let mut gb = Groebner {
        order: order.clone(),
        nvars,
        ngens,
        elems,
    };
    gb.finish();
    gb
}

impl Groebner {
    /// Minimalizes and interreduces, then sorts by increasing leading monomial.
    fn finish(&mut self) {
        let order = self.order.clone();
        if let Some(u) = self.elems.iter().position(|e| e.lm.iter().all(|x| *x == 0)) {
            let e = self.elems.swap_remove(u);
            self.elems = vec![e];
            return;
        }
        let mut keep: Vec<Elem> = Vec::new();
        for (k, e) in self.elems.iter().enumerate() {
            let redundant = self
                .elems
                .iter()
                .enumerate()
                .any(|(m, f)| m != k && divides(&f.lm, &e.lm) && (f.lm != e.lm || m < k));
            if !redundant {
                keep.push(e.clone());
            }
        }
        for k in 0..keep.len() {
            let red = reduce_by(&keep[k].poly, &keep, &order, Some(k));
            // the leading term is never reducible by the others, so it stays
            let rep = keep[k].rep.as_ref().map(|r| combine_reps(r, &keep, &red.cofactors));
            keep[k].poly = red.remainder;
            keep[k].rep = rep;
        }
        keep.sort_by(|a, b| order.cmp(&a.lm, &b.lm));
        self.elems = keep;
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn basis(&self) -> Vec<SlicePoly> {
        self.elems.iter().map(|e| e.poly.clone()).collect()
    }

    pub fn leading_monomials(&self) -> Vec<MultiIndex> {
        self.elems.iter().map(|e| e.lm.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elems.iter().any(|e| e.lm.iter().all(|x| *x == 0))
    }

    pub fn is_tracked(&self) -> bool {
        self.elems.iter().all(|e| e.rep.is_some())
    }

    /// Expression of each basis element in the generators.
    pub fn reps(&self) -> Option<Vec<Vec<SlicePoly>>> {
        self.elems.iter().map(|e| e.rep.clone()).collect()
    }

    pub fn reduce(&self, p: &SlicePoly) -> Reduction {
        reduce_by(p, &self.elems, &self.order, None)
    }

    pub fn normal_form(&self, p: &SlicePoly) -> SlicePoly {
        self.reduce(p).remainder
    }

    /// Maps cofactors with respect to the basis to cofactors with respect to
    /// the generators; `None` when the basis was built without tracking.
    pub fn lift(&self, cofactors: &[SlicePoly]) -> Option<Vec<SlicePoly>> {
        let mut out = vec![SlicePoly::zero(self.nvars); self.ngens];
        for (e, cof) in self.elems.iter().zip(cofactors) {
            if cof.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(e.rep.as_ref()?) {
                if !r.is_zero() {
                    *o = &*o + &(r * cof);
                }
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_poly;

    fn gb(gens: &[&str], n: usize) -> Groebner {
        let gens: Vec<SlicePoly> = gens.iter().map(|s| parse_poly(s, n).unwrap()).collect();
        groebner(&gens, &MonomialOrder::default(), true)
    }

    fn check_reps(g: &Groebner, gens: &[&str], n: usize) {
        let gens: Vec<SlicePoly> = gens.iter().map(|s| parse_poly(s, n).unwrap()).collect();
        for (b, rep) in g.basis().iter().zip(g.reps().unwrap()) {
            let sum = gens
                .iter()
                .zip(&rep)
                .fold(SlicePoly::zero(n), |acc, (x, r)| &acc + &(x * r));
            assert_eq!(&sum, b);
        }
    }

    #[test]
    fn two_spheres() {
        let gens = ["q1^2 + 1", "q2^2 + 1"];
        let g = gb(&gens, 2);
        assert_eq!(
            g.basis(),
            vec![parse_poly("q2^2 + 1", 2).unwrap(), parse_poly("q1^2 + 1", 2).unwrap()]
        );
        check_reps(&g, &gens, 2);
    }

    #[test]
    fn principal_and_unit() {
        let g = gb(&["(q+1)^2"], 1);
        assert_eq!(g.basis(), vec![parse_poly("q^2 + 2q + 1", 1).unwrap()]);
        let gens = ["q - i", "q - j"];
        let g = gb(&gens, 1);
        assert!(g.is_unit());
        assert_eq!(g.basis(), vec![SlicePoly::one(1)]);
        check_reps(&g, &gens, 1);
    }

    #[test]
    fn normal_form_of_symmetrized_sum() {
        let g = gb(&["q1^2 + 1", "q2^2 + 1"], 2);
        let p = parse_poly("(q1 + q2)^2", 2).unwrap();
        assert_eq!(g.normal_form(&p), parse_poly("2 q1 q2 - 2", 2).unwrap());
        let red = g.reduce(&parse_poly("q1^2 - q2^2", 2).unwrap());
        assert!(red.remainder.is_zero());
        let cof = g.lift(&red.cofactors).unwrap();
        assert_eq!(cof, vec![SlicePoly::one(2), -SlicePoly::one(2)]);
    }

    #[test]
    fn noncommutative_coefficients() {
        let gens = ["q1 q2 i - j", "q1^2 + q2 k", "q2^2 (1 + i) - 1"];
        let g = gb(&gens, 2);
        check_reps(&g, &gens, 2);
        // every generator reduces to zero
        for s in gens {
            assert!(g.normal_form(&parse_poly(s, 2).unwrap()).is_zero());
        }
    }
}
