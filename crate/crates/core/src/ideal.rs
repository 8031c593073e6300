//! Ideal handles and the ideal algebra built on Gröbner bases.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{self, exact_division, Reducer};
use crate::hilbert::{self, HilbertSeries};
use crate::linalg::{self, Subspace};
use crate::monomial::{BaseOrder, Monomial, MonomialOrder};
use crate::parse::parse_polynomial;
use crate::poly::{same_ring, Polynomial, Ring};

/// Generators of an ideal with a lazily computed reduced Gröbner basis.
#[derive(Clone)]
pub struct Ideal<F: Field> {
    ring: Arc<Ring<F>>,
    gens: Vec<Polynomial<F>>,
    gb: OnceLock<Vec<Polynomial<F>>>,
}

impl<F: Field> std::fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl<F: Field> std::fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.groebner_basis().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Basis of `[I]_δ` and of a monomial complement `[S/I]_δ`.
#[derive(Clone, Debug)]
pub struct GradedPiece<F: Field> {
    /// All monomials of degree δ, the coordinate basis of `[S]_δ`.
    pub monomials: Vec<Monomial>,
    /// Echelon basis of `[I]_δ` in those coordinates.
    pub ideal_part: Subspace<F>,
    /// Standard monomials of degree δ.
    pub standard: Vec<Monomial>,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Arc<Ring<F>>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    pub fn parse(ring: &Arc<Ring<F>>, gens: &[&str]) -> Result<Self> {
        let gens = gens.iter().map(|s| parse_polynomial(s, ring)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), gb: OnceLock::new() }
    }

    pub fn unit(ring: &Arc<Ring<F>>) -> Self {
        Ideal { ring: ring.clone(), gens: vec![Polynomial::one(ring)], gb: OnceLock::new() }
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(ring: &Arc<Ring<F>>) -> Self {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        Ideal { ring: ring.clone(), gens, gb: OnceLock::new() }
    }

    /// `m^k`, generated by all monomials of degree `k`; the unit ideal for `k <= 0`.
    pub fn maximal_power(ring: &Arc<Ring<F>>, k: i64) -> Self {
        if k <= 0 {
            return Self::unit(ring);
        }
        let gens = Monomial::all_of_degree(ring.nvars(), k as u32)
            .into_iter()
            .map(|m| Polynomial::monomial(ring, m))
            .collect();
        let ideal = Ideal { ring: ring.clone(), gens, gb: OnceLock::new() };
        // the monomials are already a reduced basis
        let mut gb = ideal.gens.clone();
        gb.sort_by(|a, b| ring.order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        let _ = ideal.gb.set(gb);
        ideal
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn groebner_basis(&self) -> &[Polynomial<F>] {
        self.gb.get_or_init(|| groebner::groebner_basis(&self.ring, &self.gens).expect("generators share the ring"))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().first().is_some_and(|g| g.is_constant())
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_homogeneous_output(&self, inputs_homogeneous: bool, what: &str) -> Result<()> {
        if inputs_homogeneous && !self.groebner_basis().iter().all(|g| g.is_homogeneous()) {
            return Err(Error::Internal(format!("{what} of homogeneous ideals is not homogeneous")));
        }
        Ok(())
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        groebner::normal_form(f, self.groebner_basis())
    }

    pub fn reducer(&self) -> Reducer<'_, F> {
        Reducer::new(self.groebner_basis())
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        self.check_ring(other)?;
        let red = other.reducer();
        Ok(self.gens.iter().all(|g| red.reduce(g).is_zero()))
    }

    /// Ideal equality, decided by comparing reduced Gröbner bases.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.groebner_basis() == other.groebner_basis())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner_basis().iter().map(|g| *g.leading_monomial().unwrap()).collect()
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Self::new(&self.ring, gens)
    }

    pub fn add_gens(&self, extra: &[Polynomial<F>]) -> Result<Self> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Self::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Self::new(&self.ring, gens)
    }

    pub fn scale_by(&self, f: &Polynomial<F>) -> Result<Self> {
        let gens = self.gens.iter().map(|g| g.try_mul(f)).collect::<Result<Vec<_>>>()?;
        Self::new(&self.ring, gens)
    }

    /// `self^n`; the unit ideal for `n <= 0`.
    pub fn power(&self, n: i64) -> Self {
        if n <= 0 {
            return Self::unit(&self.ring);
        }
        // generators of J^n are products of the minimal reduced-basis generators
        let base = self.groebner_basis().to_vec();
        let mut acc = base.clone();
        for _ in 1..n {
            let mut next = Vec::with_capacity(acc.len() * base.len());
            for a in &acc {
                for b in &base {
                    next.push(a * b);
                }
            }
            next.sort_by(|a, b| self.ring.order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
            next.dedup();
            acc = next;
        }
        Ideal { ring: self.ring.clone(), gens: acc, gb: OnceLock::new() }
    }

    /// `(y_1^i, ..., y_d^i)` for the given generators.
    pub fn bracket_power(ring: &Arc<Ring<F>>, ys: &[Polynomial<F>], i: i64) -> Result<Self> {
        if i <= 0 {
            return Ok(Self::unit(ring));
        }
        Self::new(ring, ys.iter().map(|y| y.pow(i as u32)).collect())
    }

    /// Ideal of `k[x]` generated by `ys^i` as a power of the ideal `(ys)`,
    /// built from products of the generators directly.
    pub fn power_of_gens(ring: &Arc<Ring<F>>, ys: &[Polynomial<F>], i: i64) -> Result<Self> {
        if i <= 0 {
            return Ok(Self::unit(ring));
        }
        let nv = ys.len();
        let mut gens = Vec::new();
        for m in Monomial::all_of_degree(nv, i as u32) {
            let mut p = Polynomial::one(ring);
            for (k, y) in ys.iter().enumerate() {
                if m.exp(k) > 0 {
                    p = &p * &y.pow(m.exp(k) as u32);
                }
            }
            gens.push(p);
        }
        Self::new(ring, gens)
    }

    /// Ring `k[t, x...]` with `t` first under an elimination order for `t`.
    fn tagged_ring(&self) -> Result<(Arc<Ring<F>>, Vec<usize>)> {
        let mut vars = vec![fresh_name(&self.ring.vars)];
        vars.extend(self.ring.vars.iter().cloned());
        let rest = match self.ring.order.base() {
            BaseOrder::Grevlex => BaseOrder::Grevlex,
            BaseOrder::Lex => BaseOrder::Lex,
        };
        let ring = Ring::new(self.ring.field.clone(), vars, MonomialOrder::Elimination { block: 1, rest })?;
        let map = (1..=self.ring.nvars()).collect();
        Ok((ring, map))
    }

    /// Intersection via `t I + (1 - t) J`, eliminating `t`.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let (tr, map) = self.tagged_ring()?;
        let t = Polynomial::var(&tr, 0);
        let one_minus_t = &Polynomial::one(&tr) - &t;
        let mut gens = Vec::new();
        for g in self.groebner_basis() {
            gens.push(&t * &g.remap(&tr, &map));
        }
        for g in other.groebner_basis() {
            gens.push(&one_minus_t * &g.remap(&tr, &map));
        }
        let gb = groebner::groebner_basis(&tr, &gens)?;
        let back: Vec<usize> = std::iter::once(0).chain(0..self.ring.nvars()).collect();
        let kept: Vec<Polynomial<F>> = gb
            .iter()
            .filter(|g| !g.involves_var(0))
            .map(|g| unmap(g, &self.ring, &back))
            .collect();
        let out = Self::new(&self.ring, kept)?;
        out.check_homogeneous_output(self.is_homogeneous() && other.is_homogeneous(), "intersection")?;
        Ok(out)
    }

    /// `self : (g)`.
    pub fn quotient_by_poly(&self, g: &Polynomial<F>) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::ColonByZero);
        }
        if !same_ring(g.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if self.contains(g)? {
            return Ok(Self::unit(&self.ring));
        }
        if g.is_constant() {
            return Ok(self.clone());
        }
        let principal = Self::new(&self.ring, vec![g.clone()])?;
        let meet = self.intersection(&principal)?;
        let gens = meet
            .groebner_basis()
            .iter()
            .map(|h| exact_division(h, g).ok_or_else(|| Error::Internal("intersection element not divisible".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.ring, gens)
    }

    /// `self : other`, as the intersection of the colons by each generator.
    pub fn quotient(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Err(Error::ColonByZero);
        }
        if other.is_subset_of(self)? {
            return Ok(Self::unit(&self.ring));
        }
        let homogeneous = self.is_homogeneous() && other.is_homogeneous();
        if homogeneous && self.is_m_primary() {
            return self.quotient_mprimary(other);
        }
        let mut acc: Option<Self> = None;
        for g in other.groebner_basis() {
            let q = self.quotient_by_poly(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersection(&q)?,
            });
        }
        let out = acc.expect("nonzero ideal has a generator");
        out.check_homogeneous_output(homogeneous, "quotient")?;
        Ok(out)
    }

    /// `self : m^j`.
    pub fn quotient_by_maximal_power(&self, j: i64) -> Result<Self> {
        if j <= 0 {
            return Ok(self.clone());
        }
        if self.is_homogeneous() && self.is_m_primary() {
            return self.quotient_mprimary(&Self::maximal_power(&self.ring, j));
        }
        let m = Self::maximal(&self.ring);
        let mut acc = self.clone();
        for _ in 0..j {
            acc = acc.quotient(&m)?;
        }
        Ok(acc)
    }

    /// `self : other^∞`.
    pub fn saturation(&self, other: &Self) -> Result<Self> {
        let mut acc = self.clone();
        loop {
            let next = acc.quotient(other)?;
            if next.equals(&acc)? {
                return Ok(acc);
            }
            acc = next;
        }
    }

    /// Dimension zero in the projective sense: `S/I` has finite length.
    pub fn is_m_primary(&self) -> bool {
        let lms = self.leading_monomials();
        (0..self.ring.nvars()).all(|i| lms.iter().any(|m| m.exp(i) > 0 && m.degree() == m.exp(i) as u32))
    }

    /// Least `D` with `[S/I]_D = 0`, for an m-primary homogeneous ideal.
    pub fn socle_bound(&self) -> Result<u32> {
        if !self.is_m_primary() {
            return Err(Error::NotMPrimary);
        }
        let lms = self.leading_monomials();
        let mut d = 0;
        loop {
            if Monomial::all_of_degree(self.ring.nvars(), d).iter().all(|m| lms.iter().any(|l| l.divides(m))) {
                return Ok(d);
            }
            d += 1;
        }
    }

    /// Degreewise colon of an m-primary homogeneous ideal: `[Q : K]_δ` is the
    /// kernel of `[S]_δ -> ⊕_k [S/Q]_{δ + deg k}`, and everything from the
    /// socle bound on.
    fn quotient_mprimary(&self, other: &Self) -> Result<Self> {
        let n = self.ring.nvars();
        let field = &self.ring.field;
        let top = self.socle_bound()?;
        let red = self.reducer();
        let kgens: Vec<Polynomial<F>> = other.groebner_basis().to_vec();
        let min_k = kgens.iter().filter_map(|g| g.degree()).min().unwrap_or(0);
        let mut result = Self::zero(&self.ring);
        let mut delta = 0u32;
        loop {
            if delta + min_k >= top {
                // every form of degree delta lands in Q
                let extra: Vec<Polynomial<F>> = Monomial::all_of_degree(n, delta)
                    .into_iter()
                    .map(|m| Polynomial::monomial(&self.ring, m))
                    .filter(|p| !result.reducer().reduce(p).is_zero())
                    .collect();
                result = result.add_gens(&extra)?;
                break;
            }
            let monos = Monomial::all_of_degree(n, delta);
            // rows: one per (generator, standard monomial) coordinate, columns: monomials of degree delta
            let mut image_rows: Vec<Vec<F::Elem>> = Vec::new();
            for g in &kgens {
                let deg = delta + g.degree().unwrap();
                let std: Vec<Monomial> = Monomial::all_of_degree(n, deg).into_iter().filter(|m| !red.is_reducible(m)).collect();
                if std.is_empty() {
                    continue;
                }
                let mut cols: Vec<Vec<F::Elem>> = Vec::with_capacity(monos.len());
                for m in &monos {
                    let nf = red.reduce(&g.mul_monomial(m));
                    cols.push(coords(field, &nf, &std));
                }
                for r in 0..std.len() {
                    image_rows.push(cols.iter().map(|c| c[r].clone()).collect());
                }
            }
            let kernel = if image_rows.is_empty() {
                Subspace::full(field, monos.len()).basis().to_vec()
            } else {
                linalg::kernel(field, &image_rows, monos.len())
            };
            let cur = result.reducer();
            let mut fresh = Vec::new();
            for v in kernel {
                let p = from_coords(&self.ring, &v, &monos);
                let r = cur.reduce(&p);
                if !r.is_zero() && !fresh.iter().any(|q: &Polynomial<F>| q == &r) {
                    fresh.push(r);
                }
            }
            drop(cur);
            if !fresh.is_empty() {
                // keep only an independent set of new generators
                let mut rows: Vec<Vec<F::Elem>> = fresh.iter().map(|p| coords(field, p, &monos)).collect();
                linalg::rref(field, &mut rows);
                let new_gens: Vec<Polynomial<F>> = rows.iter().map(|v| from_coords(&self.ring, v, &monos)).collect();
                result = result.add_gens(&new_gens)?;
            }
            delta += 1;
        }
        Ok(result)
    }

    /// Eliminates the variables in `drop`, returning `I ∩ k[remaining]`
    /// embedded back into the original ring.
    pub fn eliminate(&self, drop: &[usize]) -> Result<Self> {
        let n = self.ring.nvars();
        if drop.iter().any(|&i| i >= n) {
            return Err(Error::Precondition("elimination variable out of range".into()));
        }
        let mut perm: Vec<usize> = drop.to_vec();
        perm.sort_unstable();
        perm.dedup();
        let block = perm.len();
        perm.extend((0..n).filter(|i| !drop.contains(i)));
        // map[i] = new position of variable i
        let mut map = vec![0; n];
        for (pos, &v) in perm.iter().enumerate() {
            map[v] = pos;
        }
        let vars = perm.iter().map(|&v| self.ring.vars[v].clone()).collect();
        let er = Ring::new(
            self.ring.field.clone(),
            vars,
            MonomialOrder::Elimination { block, rest: self.ring.order.base() },
        )?;
        let gens: Vec<Polynomial<F>> = self.gens.iter().map(|g| g.remap(&er, &map)).collect();
        let gb = groebner::groebner_basis(&er, &gens)?;
        let kept = gb
            .iter()
            .filter(|g| (0..block).all(|i| !g.involves_var(i)))
            .map(|g| unmap(g, &self.ring, &perm))
            .collect();
        Self::new(&self.ring, kept)
    }

    /// Bases of `[I]_δ` and `[S/I]_δ`.
    pub fn graded_piece(&self, delta: i64) -> Result<GradedPiece<F>> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous("graded_piece_basis"));
        }
        let field = &self.ring.field;
        if delta < 0 {
            return Ok(GradedPiece { monomials: Vec::new(), ideal_part: Subspace::zero(0), standard: Vec::new() });
        }
        let monos = Monomial::all_of_degree(self.ring.nvars(), delta as u32);
        let red = self.reducer();
        let mut rows = Vec::new();
        let mut standard = Vec::new();
        for m in &monos {
            if red.is_reducible(m) {
                let p = Polynomial::monomial(&self.ring, *m);
                let v = &p - &red.reduce(&p);
                rows.push(coords(field, &v, &monos));
            } else {
                standard.push(*m);
            }
        }
        Ok(GradedPiece { ideal_part: Subspace::new(field, monos.len(), rows), monomials: monos, standard })
    }

    /// `dim_k [S/I]_δ`.
    pub fn hilbert_function(&self, delta: i64) -> Result<u64> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous("hilbert_function"));
        }
        if delta < 0 {
            return Ok(0);
        }
        let lms = self.leading_monomials();
        Ok(hilbert::standard_monomial_count(&lms, self.ring.nvars(), delta as u32))
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous("hilbert_series"));
        }
        if self.is_unit() {
            return Err(Error::UnitIdeal("hilbert_series"));
        }
        Ok(hilbert::hilbert_series(&self.leading_monomials(), self.ring.nvars()))
    }

    /// Krull dimension of `S/I`.
    pub fn dimension(&self) -> Result<usize> {
        Ok(self.hilbert_series()?.dim)
    }

    /// Codimension (height) of the ideal.
    pub fn codim(&self) -> Result<usize> {
        if self.is_unit() {
            return Ok(self.ring.nvars() + 1);
        }
        Ok(self.ring.nvars() - self.dimension()?)
    }

    /// Smallest degree of a nonzero element, `None` for the zero ideal.
    pub fn initial_degree(&self) -> Option<u32> {
        self.groebner_basis().iter().filter_map(|g| g.degree()).min()
    }

    /// Minimal homogeneous generators, in ascending degree.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial<F>>> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous("minimal_generators"));
        }
        let mut cand: Vec<Polynomial<F>> = self.groebner_basis().to_vec();
        cand.sort_by_key(|g| g.degree());
        let mut kept: Vec<Polynomial<F>> = Vec::new();
        let mut current = Self::zero(&self.ring);
        for g in cand {
            if !current.contains(&g)? {
                kept.push(g);
                current = Self::new(&self.ring, kept.clone())?;
            }
        }
        Ok(kept)
    }

    /// Degrees of a minimal homogeneous generating set, ascending.
    pub fn generator_degrees(&self) -> Result<Vec<u32>> {
        Ok(self.minimal_generators()?.iter().map(|g| g.degree().unwrap()).collect())
    }

    /// `I ∩ m^δ`, generated by the degree-δ multiples of low generators.
    pub fn truncation(&self, delta: u32) -> Result<Self> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous("truncation"));
        }
        let mut gens = Vec::new();
        for g in self.groebner_basis() {
            let dg = g.degree().unwrap();
            if dg >= delta {
                gens.push(g.clone());
            } else {
                for m in Monomial::all_of_degree(self.ring.nvars(), delta - dg) {
                    gens.push(g.mul_monomial(&m));
                }
            }
        }
        Self::new(&self.ring, gens)
    }

    /// Serializable string form of the reduced Gröbner basis, sorted.
    pub fn canonical_strings(&self) -> Vec<String> {
        let mut out: Vec<String> = self.groebner_basis().iter().map(|g| primitive_form(g).to_string()).collect();
        out.sort();
        out
    }
}

/// Scales a polynomial to a representative that does not depend on the
/// normalization of the input: over `Q` clear denominators and common
/// factors with a positive leading coefficient, over `F_p` make it monic.
pub fn primitive_form<F: Field>(f: &Polynomial<F>) -> Polynomial<F> {
    if f.is_zero() {
        return f.clone();
    }
    let field = f.field();
    let monic = f.monic();
    match field.kind() {
        crate::field::FieldKind::Prime(_) => monic,
        crate::field::FieldKind::Rational => {
            let scale = field.primitive_scale(monic.terms().iter().map(|(_, c)| c));
            monic.scale(&scale)
        }
    }
}

fn fresh_name(vars: &[String]) -> String {
    let mut name = "t".to_string();
    while vars.contains(&name) {
        name.push('_');
    }
    name
}

/// Maps a polynomial of a permuted/extended ring back: variable at position
/// `p` becomes `back[p]` in `ring`. Variables being dropped must not occur.
fn unmap<F: Field>(g: &Polynomial<F>, ring: &Arc<Ring<F>>, back: &[usize]) -> Polynomial<F> {
    let terms = g.terms().iter().map(|(m, c)| (m.remap(back), c.clone())).collect();
    Polynomial::from_terms(ring, terms)
}

pub(crate) fn coords<F: Field>(field: &F, p: &Polynomial<F>, basis: &[Monomial]) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); basis.len()];
    if basis.len() * p.len() > 256 {
        let index: std::collections::HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
        for (m, c) in p.terms() {
            v[index[m]] = c.clone();
        }
        return v;
    }
    for (m, c) in p.terms() {
        let k = basis.iter().position(|b| b == m).expect("term outside the coordinate basis");
        v[k] = c.clone();
    }
    v
}

pub(crate) fn from_coords<F: Field>(ring: &Arc<Ring<F>>, v: &[F::Elem], basis: &[Monomial]) -> Polynomial<F> {
    let terms = basis.iter().zip(v).filter(|(_, c)| !ring.field.is_zero(c)).map(|(m, c)| (*m, c.clone())).collect();
    Polynomial::from_terms(ring, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn ring(n: usize) -> Arc<Ring<PrimeField>> {
        Ring::with_indexed_vars(PrimeField::default_prime(), n).unwrap()
    }

    fn ideal(r: &Arc<Ring<PrimeField>>, gens: &[&str]) -> Ideal<PrimeField> {
        Ideal::parse(r, gens).unwrap()
    }

    fn poly(r: &Arc<Ring<PrimeField>>, s: &str) -> Polynomial<PrimeField> {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn membership() {
        let r = ring(3);
        assert!(ideal(&r, &["x0"]).contains(&poly(&r, "x0^2")).unwrap());
        assert!(!ideal(&r, &["x0"]).contains(&poly(&r, "x1")).unwrap());
        let i = ideal(&r, &["x0*x1", "x0*(x0-x2)"]);
        assert!(i.contains(&poly(&r, "x0^2*x2 - x0^3")).unwrap());
    }

    #[test]
    fn powers_and_products() {
        let r = ring(2);
        assert!(ideal(&r, &["x0", "x1"]).power(0).is_unit());
        assert!(ideal(&r, &["x0"]).product(&ideal(&r, &["x1"])).unwrap().equals(&ideal(&r, &["x0*x1"])).unwrap());
        let y = vec![poly(&r, "x0 + x1")];
        let b = Ideal::bracket_power(&r, &y, 3).unwrap();
        assert!(b.equals(&Ideal::new(&r, y.clone()).unwrap().power(3)).unwrap());
        assert!(Ideal::maximal(&r).power(3).equals(&Ideal::maximal_power(&r, 3)).unwrap());
    }

    #[test]
    fn intersections() {
        let r = ring(2);
        let x = ideal(&r, &["x0"]);
        let y = ideal(&r, &["x1"]);
        assert!(x.intersection(&y).unwrap().equals(&ideal(&r, &["x0*x1"])).unwrap());
        assert!(x.intersection(&x).unwrap().equals(&x).unwrap());
        let a = ideal(&r, &["x0^2", "x0*x1"]);
        assert!(a.intersection(&y).unwrap().equals(&ideal(&r, &["x0*x1"])).unwrap());
    }

    #[test]
    fn quotients() {
        let r = ring(2);
        let q = ideal(&r, &["x0^2"]).quotient(&ideal(&r, &["x0"])).unwrap();
        assert!(q.equals(&ideal(&r, &["x0"])).unwrap());
        let q = ideal(&r, &["x0*x1"]).quotient(&ideal(&r, &["x0"])).unwrap();
        assert!(q.equals(&ideal(&r, &["x1"])).unwrap());
        assert_eq!(ideal(&r, &["x0"]).quotient(&Ideal::zero(&r)).unwrap_err(), Error::ColonByZero);
    }

    #[test]
    fn mprimary_colon_matches_generic_route() {
        let r = ring(3);
        let q = ideal(&r, &["x0^3", "x1^2 - x0*x2", "x2^4", "x0*x1*x2"]);
        assert!(q.is_m_primary());
        for k in [ideal(&r, &["x0", "x1", "x2"]), ideal(&r, &["x0^2", "x1*x2"]), ideal(&r, &["x1 + x2"])] {
            let fast = q.quotient_mprimary(&k).unwrap();
            let mut slow: Option<Ideal<PrimeField>> = None;
            for g in k.groebner_basis() {
                let c = q.quotient_by_poly(g).unwrap();
                slow = Some(match slow {
                    None => c,
                    Some(s) => s.intersection(&c).unwrap(),
                });
            }
            assert!(fast.equals(&slow.unwrap()).unwrap());
        }
    }

    #[test]
    fn elimination() {
        let r = ring(2);
        assert!(ideal(&r, &["x0 - x1^2"]).eliminate(&[0]).unwrap().is_zero());
        let e = ideal(&r, &["x0*x1", "x0 - x1"]).eliminate(&[0]).unwrap();
        assert!(e.equals(&ideal(&r, &["x1^2"])).unwrap());
    }

    #[test]
    fn graded_pieces() {
        let r = ring(3);
        let m = Ideal::maximal(&r);
        assert_eq!(m.graded_piece(1).unwrap().ideal_part.dim(), 3);
        let z = Ideal::zero(&r);
        let p = z.graded_piece(2).unwrap();
        assert_eq!((p.ideal_part.dim(), p.standard.len()), (0, 6));
        let x = ideal(&r, &["x0*x1", "x0*(x0-x2)", "x1*(x1-x2)*(x1+x2)"]);
        assert_eq!(x.graded_piece(2).unwrap().standard.len(), 4);
    }

    #[test]
    fn hilbert_data() {
        let r = ring(3);
        let hs = ideal(&r, &["x0*x1"]).hilbert_series().unwrap();
        assert_eq!((hs.numerator.clone(), hs.dim, hs.multiplicity()), (vec![1, 1], 2, 2));
        let x = ideal(&r, &["x0*x1", "x0*(x0-x2)", "x1*(x1-x2)*(x1+x2)"]);
        let hs = x.hilbert_series().unwrap();
        assert_eq!((hs.dim, hs.multiplicity(), hs.a_invariant()), (1, 4, 1));
        let hf: Vec<u64> = (0..5).map(|d| x.hilbert_function(d).unwrap()).collect();
        assert_eq!(hf, vec![1, 3, 4, 4, 4]);
        assert_eq!(x.hilbert_function(-1).unwrap(), 0);
        assert_eq!(Ideal::unit(&r).hilbert_series().unwrap_err(), Error::UnitIdeal("hilbert_series"));
    }

    #[test]
    fn canonical_strings_ignore_scaling() {
        let r = Ring::with_indexed_vars(Rationals, 2).unwrap();
        let a = Ideal::parse(&r, &["2*x0 - 3*x1"]).unwrap();
        let b = Ideal::parse(&r, &["-4*x0 + 6*x1"]).unwrap();
        assert_eq!(a.canonical_strings(), vec!["2*x0 - 3*x1".to_string()]);
        assert_eq!(a.canonical_strings(), b.canonical_strings());
    }

    #[test]
    fn minimal_generators_drop_redundancy() {
        let r = ring(2);
        let i = ideal(&r, &["x0^2", "x0*x1", "x0^2*x1", "x0^3 + x0*x1^2"]);
        assert_eq!(i.generator_degrees().unwrap(), vec![2, 2]);
    }
}
