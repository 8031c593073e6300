//! Division algorithm and Buchberger's algorithm with the Gebauer-Möller
//! pair criteria and the normal selection strategy.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{same_ring, Polynomial, Ring, Term};

/// Bitmask of the variables occurring in a monomial; a cheap necessary
/// condition for divisibility.
#[inline]
fn support(m: &Monomial) -> u16 {
    let mut s = 0u16;
    for i in 0..crate::monomial::MAX_VARS {
        if m.exp(i) > 0 {
            s |= 1 << i;
        }
    }
    s
}

/// Leading data of a divisor, precomputed once.
struct Divisor<'a, F: Field> {
    lm: Monomial,
    mask: u16,
    lc_inv: F::Elem,
    poly: &'a Polynomial<F>,
}

fn divisors<'a, F: Field>(basis: impl IntoIterator<Item = &'a Polynomial<F>>) -> Vec<Divisor<'a, F>> {
    basis
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let lm = *g.leading_monomial().unwrap();
            Divisor {
                lm,
                mask: support(&lm),
                lc_inv: g.field().inv(g.leading_coeff().unwrap()).unwrap(),
                poly: g,
            }
        })
        .collect()
}

fn find_divisor<'a, 'b, F: Field>(divs: &'b [Divisor<'a, F>], m: &Monomial) -> Option<&'b Divisor<'a, F>> {
    let mask = support(m);
    divs.iter().find(|d| d.mask & !mask == 0 && d.lm.divides(m))
}

/// `a - c * shift * b` for descending term lists.
fn merge_sub<F: Field>(
    field: &F,
    order: MonomialOrder,
    a: &[Term<F>],
    c: &F::Elem,
    shift: &Monomial,
    b: &[Term<F>],
) -> Vec<Term<F>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    while i < a.len() || j < b.len() {
        if j == b.len() {
            out.extend_from_slice(&a[i..]);
            break;
        }
        let bm = b[j].0.mul(shift);
        let ord = if i == a.len() { Ordering::Less } else { order.cmp(&a[i].0, &bm) };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, field.neg(&field.mul(c, &b[j].1))));
                j += 1;
            }
            Ordering::Equal => {
                let v = field.sub(&a[i].1, &field.mul(c, &b[j].1));
                if !field.is_zero(&v) {
                    out.push((bm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn reduce_with<F: Field>(f: &Polynomial<F>, divs: &[Divisor<'_, F>], full: bool) -> Polynomial<F> {
    let ring = f.ring();
    let field = &ring.field;
    let order = ring.order;
    let mut cur: Vec<Term<F>> = f.terms().to_vec();
    let mut pos = 0;
    let mut rem: Vec<Term<F>> = Vec::new();
    while pos < cur.len() {
        let (m, c) = &cur[pos];
        match find_divisor(divs, m) {
            Some(d) => {
                let shift = d.lm.div(m).expect("divisor divides");
                let factor = field.mul(c, &d.lc_inv);
                cur = merge_sub(field, order, &cur[pos..], &factor, &shift, d.poly.terms());
                pos = 0;
            }
            None => {
                if !full {
                    rem.extend_from_slice(&cur[pos..]);
                    break;
                }
                rem.push(cur[pos].clone());
                pos += 1;
            }
        }
    }
    Polynomial::from_sorted_terms(ring, rem)
}

/// Remainder of `f` on division by `basis`: no term of the result is
/// divisible by a leading monomial of `basis`.
pub fn normal_form<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>]) -> Result<Polynomial<F>> {
    if let Some(g) = basis.iter().find(|g| !same_ring(g.ring(), f.ring())) {
        let _ = g;
        return Err(Error::RingMismatch);
    }
    Ok(reduce_with(f, &divisors(basis), true))
}

/// Reusable reducer over a fixed basis.
pub struct Reducer<'a, F: Field> {
    divs: Vec<Divisor<'a, F>>,
}

impl<'a, F: Field> Reducer<'a, F> {
    pub fn new(basis: &'a [Polynomial<F>]) -> Self {
        Reducer { divs: divisors(basis) }
    }

    pub fn reduce(&self, f: &Polynomial<F>) -> Polynomial<F> {
        reduce_with(f, &self.divs, true)
    }

    pub fn is_reducible(&self, m: &Monomial) -> bool {
        find_divisor(&self.divs, m).is_some()
    }
}

pub fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let field = f.field();
    let (fm, gm) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = fm.lcm(gm);
    let a = f.mul_term(&field.inv(f.leading_coeff().unwrap()).unwrap(), &fm.div(&l).unwrap());
    let b = g.mul_term(&field.inv(g.leading_coeff().unwrap()).unwrap(), &gm.div(&l).unwrap());
    &a - &b
}

#[derive(Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<F: Field> {
    ring: Arc<Ring<F>>,
    polys: Vec<Polynomial<F>>,
    lms: Vec<Monomial>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<F: Field> Engine<F> {
    /// Gebauer-Möller update with a new basis element.
    fn insert(&mut self, h: Polynomial<F>) {
        let hm = *h.leading_monomial().unwrap();
        let k = self.polys.len();
        self.polys.push(h);
        self.lms.push(hm);

        let mut cand: Vec<(usize, Monomial)> = self.active.iter().map(|&g| (g, hm.lcm(&self.lms[g]))).collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = cand.pop() {
            let coprime = hm.is_coprime(&self.lms[g1]);
            let dominated = cand.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                kept.push((g1, l1));
            }
        }
        // product criterion
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !hm.is_coprime(&self.lms[*g]))
            .map(|(g, l)| Pair { i: g, j: k, lcm: l })
            .collect();

        // chain criterion on old pairs
        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(hm.divides(&p.lcm) && lms[p.i].lcm(&hm) != p.lcm && lms[p.j].lcm(&hm) != p.lcm)
        });
        self.pairs.extend(new_pairs);
        self.active.retain(|&g| !hm.divides(&lms[g]));
        self.active.push(k);
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.ring.order;
        let idx = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.lcm
                .degree()
                .cmp(&pb.lcm.degree())
                .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.swap_remove(idx))
    }

    fn run(mut self) -> Vec<Polynomial<F>> {
        while let Some(p) = self.select() {
            let s = s_polynomial(&self.polys[p.i], &self.polys[p.j]);
            let h = {
                let divs = divisors(self.active.iter().map(|&g| &self.polys[g]));
                reduce_with(&s, &divs, true)
            };
            if !h.is_zero() {
                self.insert(h.monic());
            }
        }
        let basis: Vec<Polynomial<F>> = self.active.iter().map(|&g| self.polys[g].clone()).collect();
        interreduce(basis)
    }
}

/// Minimal, monic, tail-reduced basis from a Gröbner basis, sorted by
/// ascending leading monomial.
fn interreduce<F: Field>(mut basis: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    let Some(first) = basis.first() else { return basis };
    let order = first.ring().order;
    basis.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(lm)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others = divisors(minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g));
        out.push(reduce_with(&minimal[k], &others, true).monic());
    }
    out
}

/// Reduced Gröbner basis of the ideal generated by `gens` in the ring's
/// order. The zero ideal has the empty basis.
pub fn groebner_basis<F: Field>(ring: &Arc<Ring<F>>, gens: &[Polynomial<F>]) -> Result<Vec<Polynomial<F>>> {
    if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
        return Err(Error::RingMismatch);
    }
    let mut input: Vec<Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if input.iter().any(|g| g.is_constant()) {
        return Ok(vec![Polynomial::one(ring)]);
    }
    let order = ring.order;
    input.sort_by(|a, b| {
        let (am, bm) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
        am.degree().cmp(&bm.degree()).then_with(|| order.cmp(am, bm))
    });
    let mut engine = Engine { ring: ring.clone(), polys: Vec::new(), lms: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for g in input {
        let h = {
            let divs = divisors(engine.active.iter().map(|&k| &engine.polys[k]));
            reduce_with(&g, &divs, true)
        };
        if !h.is_zero() {
            engine.insert(h.monic());
        }
    }
    Ok(engine.run())
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis<F: Field>(basis: &[Polynomial<F>]) -> bool {
    let divs = divisors(basis);
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j]);
            if !reduce_with(&s, &divs, true).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Checks the defining properties of a reduced Gröbner basis except
/// generation of a given ideal.
pub fn is_reduced_groebner_basis<F: Field>(basis: &[Polynomial<F>]) -> bool {
    for (k, g) in basis.iter().enumerate() {
        if g.is_zero() || !g.field().is_one(g.leading_coeff().unwrap()) {
            return false;
        }
        for (l, h) in basis.iter().enumerate() {
            if k != l {
                let hm = h.leading_monomial().unwrap();
                if g.terms().iter().any(|(m, _)| hm.divides(m)) {
                    return false;
                }
            }
        }
    }
    is_groebner_basis(basis)
}

/// Exact quotient `f / g`, or `None` if `g` does not divide `f`.
pub fn exact_division<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Option<Polynomial<F>> {
    if g.is_zero() {
        return None;
    }
    let ring = f.ring();
    let field = &ring.field;
    let gm = *g.leading_monomial().unwrap();
    let ginv = field.inv(g.leading_coeff().unwrap()).unwrap();
    let mut rest: Vec<Term<F>> = f.terms().to_vec();
    let mut quot: Vec<Term<F>> = Vec::new();
    while let Some((m, c)) = rest.first() {
        let shift = gm.div(m)?;
        let factor = field.mul(c, &ginv);
        rest = merge_sub(field, ring.order, &rest, &factor, &shift, g.terms());
        quot.push((shift, factor));
    }
    Some(Polynomial::from_sorted_terms(ring, quot))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::parse::parse_polynomial;
    use proptest::prelude::*;

    fn ring() -> Arc<Ring<PrimeField>> {
        Ring::with_indexed_vars(PrimeField::default_prime(), 3).unwrap()
    }

    fn polys(r: &Arc<Ring<PrimeField>>, ss: &[&str]) -> Vec<Polynomial<PrimeField>> {
        ss.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()
    }

    #[test]
    fn normal_form_examples() {
        let r = ring();
        let p = |s| parse_polynomial(s, &r).unwrap();
        assert_eq!(normal_form(&p("x0^2"), &[p("x0 - x2")]).unwrap(), p("x2^2"));
        assert!(normal_form(&p("x0"), &[p("x0")]).unwrap().is_zero());
        assert_eq!(normal_form(&p("x1"), &[p("x0")]).unwrap(), p("x1"));
    }

    #[test]
    fn normal_form_by_substitution_oracle() {
        // reducing modulo x0 - x2 is substitution x0 -> x2
        let r = ring();
        let g = polys(&r, &["x0 - x2"]);
        let f = parse_polynomial("x0^3*x1 - 5*x0*x1^2 + x0^2*x2", &r).unwrap();
        let sub = parse_polynomial("x2^3*x1 - 5*x2*x1^2 + x2^2*x2", &r).unwrap();
        assert_eq!(normal_form(&f, &g).unwrap(), sub);
    }

    #[test]
    fn basis_of_variables_is_itself() {
        let r = Ring::with_indexed_vars(Rationals, 2).unwrap();
        let g = vec![parse_polynomial("x0", &r).unwrap(), parse_polynomial("x1", &r).unwrap()];
        let gb = groebner_basis(&r, &g).unwrap();
        assert_eq!(gb.len(), 2);
        assert!(gb.contains(&g[0]) && gb.contains(&g[1]));
        assert!(groebner_basis(&r, &[]).unwrap().is_empty());
        assert!(groebner_basis(&r, &[Polynomial::zero(&r)]).unwrap().is_empty());
    }

    #[test]
    fn four_point_ideal_satisfies_criterion() {
        let r = ring();
        let gens = polys(&r, &["x0*x1", "x0*(x0-x2)", "x1*(x1-x2)*(x1+x2)"]);
        let gb = groebner_basis(&r, &gens).unwrap();
        assert!(is_reduced_groebner_basis(&gb));
        for g in &gens {
            assert!(normal_form(g, &gb).unwrap().is_zero());
        }
    }

    #[test]
    fn lex_basis_of_twisted_cubic() {
        let r = Ring::new(
            PrimeField::default_prime(),
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            MonomialOrder::Lex,
        )
        .unwrap();
        let gens = vec![
            parse_polynomial("a*c - b^2", &r).unwrap(),
            parse_polynomial("b*d - c^2", &r).unwrap(),
            parse_polynomial("a*d - b*c", &r).unwrap(),
        ];
        let gb = groebner_basis(&r, &gens).unwrap();
        assert!(is_reduced_groebner_basis(&gb));
        assert!(gb.iter().all(|g| g.is_homogeneous()));
    }

    #[test]
    fn exact_division_works() {
        let r = ring();
        let p = |s| parse_polynomial(s, &r).unwrap();
        let f = &p("x0 - x1") * &p("x1^2 + x2*x0 + 3");
        assert_eq!(exact_division(&f, &p("x0 - x1")).unwrap(), p("x1^2 + x2*x0 + 3"));
        assert!(exact_division(&p("x0 + 1"), &p("x0 - x1")).is_none());
    }

    fn arb_gens() -> impl Strategy<Value = Vec<String>> {
        let term = (-3i64..4, 0u32..3, 0u32..3, 0u32..3).prop_map(|(c, a, b, d)| format!("({c})*x0^{a}*x1^{b}*x2^{d}"));
        let poly = proptest::collection::vec(term, 1..4).prop_map(|ts| ts.join(" + "));
        proptest::collection::vec(poly, 1..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn random_bases_are_reduced_and_generate(gens in arb_gens()) {
            let r = ring();
            let gens: Vec<_> = gens.iter().map(|s| parse_polynomial(s, &r).unwrap()).collect();
            let gb = groebner_basis(&r, &gens).unwrap();
            prop_assert!(is_reduced_groebner_basis(&gb));
            for g in &gens {
                prop_assert!(normal_form(g, &gb).unwrap().is_zero());
            }
        }
    }
}
