//! Polynomial rings and sparse polynomials.
//!
//! A [`Polynomial`] is a term list sorted strictly descending in the ring's
//! monomial order, with no zero coefficients. The zero polynomial has an
//! empty term list and no degree.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};

/// Field, variable names and monomial order of `k[x_1, ..., x_n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ring<F: Field> {
    pub field: F,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

impl<F: Field> Ring<F> {
    pub fn new(field: F, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<Self>> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Precondition(format!("variable `{v}` declared twice")));
            }
        }
        Ok(Arc::new(Ring { field, vars, order }))
    }

    /// `k[x0, ..., x{n-1}]` with grevlex.
    pub fn with_indexed_vars(field: F, n: usize) -> Result<Arc<Self>> {
        Self::new(field, (0..n).map(|i| format!("x{i}")).collect(), MonomialOrder::Grevlex)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

pub fn same_ring<F: Field>(a: &Arc<Ring<F>>, b: &Arc<Ring<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub type Term<F> = (Monomial, <F as Field>::Elem);

#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<Ring<F>>,
    terms: Vec<Term<F>>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}
impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> std::hash::Hash for Polynomial<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<Ring<F>>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<Ring<F>>, c: F::Elem) -> Self {
        Self::term(ring, Monomial::one(), c)
    }

    pub fn term(ring: &Arc<Ring<F>>, m: Monomial, c: F::Elem) -> Self {
        let terms = if ring.field.is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn monomial(ring: &Arc<Ring<F>>, m: Monomial) -> Self {
        Self::term(ring, m, ring.field.one())
    }

    pub fn var(ring: &Arc<Ring<F>>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Self::monomial(ring, Monomial::var(i))
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates,
    /// drops zeros.
    pub fn from_terms(ring: &Arc<Ring<F>>, mut terms: Vec<Term<F>>) -> Self {
        let order = ring.order;
        let field = &ring.field;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<Term<F>> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if field.is_zero(lc) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Trusts that `terms` are already sorted descending and nonzero.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring<F>>, terms: Vec<Term<F>>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !ring.field.is_zero(c)));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Total degree; `None` is the `-infinity` of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Smallest degree of a term, `None` for zero.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    /// Variables with nonzero exponent somewhere in the polynomial.
    pub fn involves_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(i) > 0)
    }

    pub fn coeff_of(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(tm, _)| tm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn assert_ring(&self, other: &Self) {
        assert!(same_ring(&self.ring, &other.ring), "operands live in different polynomial rings");
    }

    /// `self + c * m * other`, the core merge step.
    pub fn add_scaled_shifted(&self, c: &F::Elem, m: &Monomial, other: &Self) -> Self {
        self.assert_ring(other);
        let field = &self.ring.field;
        if field.is_zero(c) || other.is_zero() {
            return self.clone();
        }
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(om, oc)| (om.mul(m), field.mul(c, oc))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((am, _)), Some((bm, _))) => match order.cmp(am, bm) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (am, ac) = a.next().unwrap();
                        let (_, bc) = b.next().unwrap();
                        let s = field.add(ac, &bc);
                        if !field.is_zero(&s) {
                            out.push((*am, s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, x)| (*m, field.mul(c, x))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        // multiplication by a monomial preserves the order
        let terms = self.terms.iter().map(|(tm, x)| (tm.mul(m), field.mul(c, x))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        self.mul_term(&self.ring.field.one(), m)
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if self.field().is_one(lc) => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn neg(&self) -> Self {
        let field = &self.ring.field;
        let terms = self.terms.iter().map(|(m, c)| (*m, field.neg(c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.add_scaled_shifted(&self.field().one(), &Monomial::one(), other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let m1 = self.field().neg(&self.field().one());
        Ok(self.add_scaled_shifted(&m1, &Monomial::one(), other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let field = &self.ring.field;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (am, ac) in &self.terms {
            for (bm, bc) in &other.terms {
                terms.push((am.mul(bm), field.mul(ac, bc)));
            }
        }
        Ok(Self::from_terms(&self.ring, terms))
    }

    /// `self^e`; `e = 0` gives 1 (including `0^0`).
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact substitution of a point.
    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: point.len() });
        }
        let field = &self.ring.field;
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    v = field.mul(&v, &field.pow(x, e as u64));
                }
            }
            acc = field.add(&acc, &v);
        }
        Ok(acc)
    }

    /// Re-embeds into `target`, sending variable `i` to `map[i]`.
    pub fn remap(&self, target: &Arc<Ring<F>>, map: &[usize]) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.remap(map), c.clone())).collect();
        Self::from_terms(target, terms)
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl<'a, F: Field> std::ops::Add<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.try_add(rhs).expect("operands live in different polynomial rings")
    }
}

impl<'a, F: Field> std::ops::Sub<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.try_sub(rhs).expect("operands live in different polynomial rings")
    }
}

impl<'a, F: Field> std::ops::Mul<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.try_mul(rhs).expect("operands live in different polynomial rings")
    }
}

impl<F: Field> std::ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

/// Right-hand operand of [`poly_arith`].
pub enum Operand<'a, F: Field> {
    Poly(&'a Polynomial<F>),
    Scalar(F::Elem),
    Integer(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Scale,
    Power,
}

/// Checked polynomial arithmetic with explicit operand kinds.
pub fn poly_arith<F: Field>(op: ArithOp, a: &Polynomial<F>, b: Operand<'_, F>) -> Result<Polynomial<F>> {
    match (op, b) {
        (ArithOp::Add, Operand::Poly(b)) => a.try_add(b),
        (ArithOp::Sub, Operand::Poly(b)) => a.try_sub(b),
        (ArithOp::Mul, Operand::Poly(b)) => a.try_mul(b),
        (ArithOp::Scale, Operand::Scalar(c)) => Ok(a.scale(&c)),
        (ArithOp::Power, Operand::Integer(e)) => Ok(a.pow(e)),
        (op, _) => Err(Error::Precondition(format!("operand kind does not fit {op:?}"))),
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = &self.ring.field;
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = field.is_negative(c);
            let abs = if neg { field.neg(c) } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let unit = field.is_one(&abs);
            if m.is_one() {
                write!(f, "{}", field.display(&abs))?;
                continue;
            }
            if !unit {
                write!(f, "{}*", field.display(&abs))?;
            }
            let mut first = true;
            for (i, name) in self.ring.vars.iter().enumerate() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
