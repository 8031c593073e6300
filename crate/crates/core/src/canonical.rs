//! The graded canonical module of a Cohen-Macaulay `R = S/I`, realized by
//! linkage: for a regular sequence `β ⊆ I` of forms of one degree `δ` and
//! `L = (β) : I`, one has `ω ≅ (L/(β))(gδ - n)`.
//!
//! Elements of `[ω]_t` are stored as normal forms modulo `(β)` of elements
//! of `[L]_{t+σ}`, written in the standard monomials of `(β)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rand::Rng;
use serde::Serialize;

use crate::algebra::{random_combination, GradedAlgebra, GENERIC_RETRIES};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::{from_coords, Ideal};
use crate::linalg::{self, Subspace};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};

/// A graded piece `[M]_D` of a submodule of `ω`, in the coordinates of the
/// standard monomials of `(β)` of degree `D + σ`.
#[derive(Clone, Debug)]
pub struct OmegaPiece<F: Field> {
    pub degree: i64,
    pub space: Subspace<F>,
}

impl<F: Field> OmegaPiece<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalRep<F: Field> {
    algebra: GradedAlgebra<F>,
    beta: Vec<Polynomial<F>>,
    beta_ideal: Ideal<F>,
    link: Ideal<F>,
    sigma: i64,
    a: i64,
    pieces: Arc<Mutex<BTreeMap<i64, OmegaPiece<F>>>>,
    bases: Arc<Mutex<BTreeMap<i64, Arc<Coordinates>>>>,
}

/// Standard monomials of `(β)` in one degree with their positions.
#[derive(Debug)]
struct Coordinates {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl<F: Field> CanonicalRep<F> {
    /// Builds the linkage representation. `R` must be Cohen-Macaulay.
    pub fn new<R: Rng + ?Sized>(algebra: &GradedAlgebra<F>, rng: &mut R) -> Result<Self> {
        if !algebra.is_cohen_macaulay(rng)? {
            return Err(Error::NotCohenMacaulay);
        }
        let ring = algebra.ring().clone();
        let n = ring.nvars() as i64;
        let beta = choose_regular_sequence(algebra, rng)?;
        let delta = beta.first().and_then(|b| b.degree()).unwrap_or(0) as i64;
        let beta_ideal = Ideal::new(&ring, beta.clone())?;
        let link = if beta.is_empty() {
            Ideal::unit(&ring)
        } else {
            beta_ideal.quotient(algebra.ideal())?
        };
        let sigma = beta.len() as i64 * delta - n;
        let a = algebra.series().a_invariant();
        let rep = CanonicalRep {
            algebra: algebra.clone(),
            beta,
            beta_ideal,
            link,
            sigma,
            a,
            pieces: Arc::default(),
            bases: Arc::default(),
        };
        if rep.omega_dim(-a) == 0 || rep.omega_dim(-a - 1) != 0 {
            return Err(Error::Internal("initial degree of the canonical module differs from -a".into()));
        }
        Ok(rep)
    }

    pub fn algebra(&self) -> &GradedAlgebra<F> {
        &self.algebra
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        self.algebra.ring()
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn beta(&self) -> &[Polynomial<F>] {
        &self.beta
    }

    pub fn beta_ideal(&self) -> &Ideal<F> {
        &self.beta_ideal
    }

    pub fn link(&self) -> &Ideal<F> {
        &self.link
    }

    pub fn sigma(&self) -> i64 {
        self.sigma
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn d(&self) -> usize {
        self.algebra.dim()
    }

    /// Standard monomials of `(β)` in degree `t + σ`.
    fn coordinates(&self, t: i64) -> Arc<Coordinates> {
        if let Some(c) = self.bases.lock().unwrap().get(&t) {
            return c.clone();
        }
        let deg = t + self.sigma;
        let monomials: Vec<Monomial> = if deg < 0 {
            Vec::new()
        } else {
            let red = self.beta_ideal.reducer();
            Monomial::all_of_degree(self.ring().nvars(), deg as u32)
                .into_iter()
                .filter(|m| !red.is_reducible(m))
                .collect()
        };
        let index = monomials.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let c = Arc::new(Coordinates { monomials, index });
        self.bases.lock().unwrap().insert(t, c.clone());
        c
    }

    /// Normal form modulo `(β)`, as coordinates in degree `t` of ω.
    fn to_coords(&self, p: &Polynomial<F>, t: i64) -> Vec<F::Elem> {
        let nf = self.beta_ideal.normal_form(p).expect("same ring");
        let basis = self.coordinates(t);
        let mut v = vec![self.field().zero(); basis.monomials.len()];
        for (m, c) in nf.terms() {
            v[basis.index[m]] = c.clone();
        }
        v
    }

    pub fn to_polynomial(&self, v: &[F::Elem], t: i64) -> Polynomial<F> {
        from_coords(self.ring(), v, &self.coordinates(t).monomials)
    }

    /// Number of coordinates of `[ω]_t`.
    pub fn ambient_dim(&self, t: i64) -> usize {
        self.coordinates(t).monomials.len()
    }

    /// `[ω]_t`.
    pub fn omega_piece(&self, t: i64) -> OmegaPiece<F> {
        if let Some(p) = self.pieces.lock().unwrap().get(&t) {
            return p.clone();
        }
        let ncoords = self.ambient_dim(t);
        let deg = t + self.sigma;
        let piece = if deg < 0 || ncoords == 0 {
            OmegaPiece { degree: t, space: Subspace::zero(ncoords) }
        } else {
            let piece = self.link.graded_piece(deg).expect("homogeneous link");
            let rows: Vec<Vec<F::Elem>> = piece
                .ideal_part
                .basis()
                .iter()
                .map(|v| self.to_coords(&from_coords(self.ring(), v, &piece.monomials), t))
                .collect();
            OmegaPiece { degree: t, space: Subspace::new(self.field(), ncoords, rows) }
        };
        self.pieces.lock().unwrap().insert(t, piece.clone());
        piece
    }

    pub fn omega_dim(&self, t: i64) -> usize {
        self.omega_piece(t).dim()
    }

    /// Representatives in `L` of a basis of `[ω]_t`.
    pub fn omega_component_basis(&self, t: i64) -> Vec<Polynomial<F>> {
        self.omega_piece(t).space.basis().iter().map(|v| self.to_polynomial(v, t)).collect()
    }

    /// `[f · M]_{t + deg f}` for the piece `[M]_t`.
    pub fn multiply_piece(&self, f: &Polynomial<F>, piece: &OmegaPiece<F>) -> Vec<Vec<F::Elem>> {
        let e = f.degree().unwrap_or(0) as i64;
        let t = piece.degree;
        piece
            .space
            .basis()
            .iter()
            .map(|v| self.to_coords(&(f * &self.to_polynomial(v, t)), t + e))
            .collect()
    }

    /// `[K M]_D` where `M` is generated by `gens` (pieces of ω) and `K` is
    /// the ideal generated by `ideal_gens`.
    pub fn ideal_times(&self, ideal_gens: &[Polynomial<F>], pieces: &BTreeMap<i64, OmegaPiece<F>>, target: i64) -> Subspace<F> {
        let ncoords = self.ambient_dim(target);
        let mut rows = Vec::new();
        for q in ideal_gens {
            let Some(dq) = q.degree() else { continue };
            for (&t, piece) in pieces {
                let gap = target - t - dq as i64;
                if gap < 0 {
                    continue;
                }
                for mu in Monomial::all_of_degree(self.ring().nvars(), gap as u32) {
                    let f = q.mul_monomial(&mu);
                    rows.extend(self.multiply_piece(&f, piece));
                }
            }
        }
        Subspace::new(self.field(), ncoords, rows)
    }

    /// `[K ω]_D` for an ideal `K` of `S`.
    pub fn ideal_times_omega(&self, k: &Ideal<F>, target: i64) -> Subspace<F> {
        self.polys_times_omega(k.gens(), target)
    }

    /// `[(gens) ω]_D`.
    pub fn polys_times_omega(&self, gens: &[Polynomial<F>], target: i64) -> Subspace<F> {
        let ncoords = self.ambient_dim(target);
        let mut rows = Vec::new();
        for q in gens {
            let Some(dq) = q.degree() else { continue };
            let piece = self.omega_piece(target - dq as i64);
            rows.extend(self.multiply_piece(q, &piece));
        }
        Subspace::new(self.field(), ncoords, rows)
    }

    /// `[m ω]_t`.
    pub fn maximal_times_omega(&self, t: i64) -> Subspace<F> {
        self.ideal_times_omega(&Ideal::maximal(self.ring()), t)
    }

    /// Elements `w ∈ V ⊆ [ω]_δ` with `[K]_{e} w ⊆ T` for every degree-`e`
    /// generator set, i.e. the colon of a target family by an ideal. The
    /// target is given degreewise by `target(D)`.
    pub fn colon_piece(
        &self,
        v: &OmegaPiece<F>,
        multipliers: &[Polynomial<F>],
        target: &mut dyn FnMut(i64) -> Subspace<F>,
    ) -> OmegaPiece<F> {
        let field = self.field();
        let basis = v.space.basis();
        if basis.is_empty() {
            return v.clone();
        }
        let mut cache: BTreeMap<i64, Subspace<F>> = BTreeMap::new();
        // residual of each basis vector, stacked over all multipliers
        let mut columns: Vec<Vec<F::Elem>> = vec![Vec::new(); basis.len()];
        for f in multipliers {
            let e = f.degree().unwrap_or(0) as i64;
            let deg = v.degree + e;
            let tgt = cache.entry(deg).or_insert_with(|| target(deg));
            for (k, w) in basis.iter().enumerate() {
                let img = self.to_coords(&(f * &self.to_polynomial(w, v.degree)), deg);
                columns[k].extend(tgt.reduce(field, &img));
            }
        }
        let nrows = columns[0].len();
        let rows: Vec<Vec<F::Elem>> = (0..nrows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
        let kernel = if rows.is_empty() {
            (0..basis.len())
                .map(|k| {
                    let mut e = vec![field.zero(); basis.len()];
                    e[k] = field.one();
                    e
                })
                .collect()
        } else {
            linalg::kernel(field, &rows, basis.len())
        };
        let ncoords = v.space.ambient_dim();
        let vecs: Vec<Vec<F::Elem>> = kernel
            .iter()
            .map(|c| {
                let mut acc = vec![field.zero(); ncoords];
                for (coef, w) in c.iter().zip(basis) {
                    if field.is_zero(coef) {
                        continue;
                    }
                    for (x, y) in acc.iter_mut().zip(w) {
                        *x = field.add(x, &field.mul(coef, y));
                    }
                }
                acc
            })
            .collect();
        OmegaPiece { degree: v.degree, space: Subspace::new(field, ncoords, vecs) }
    }

    /// `ann_R([ω]_t R)` as an ideal of `S` containing `I`; the unit ideal
    /// when `[ω]_t = 0`.
    pub fn ann_component(&self, t: i64) -> Result<Ideal<F>> {
        let lifts = self.omega_component_basis(t);
        if lifts.is_empty() {
            return Ok(Ideal::unit(self.ring()));
        }
        if self.beta.is_empty() {
            // ω = S(-n) is faithful
            return Ok(Ideal::zero(self.ring()));
        }
        let h = Ideal::new(self.ring(), lifts)?;
        let ann = self.beta_ideal.quotient(&h)?;
        if !self.algebra.ideal().is_subset_of(&ann)? {
            return Err(Error::Internal("annihilator does not contain the defining ideal".into()));
        }
        Ok(ann)
    }

    /// `{f ∈ S_i : f [ω]_u = 0 for u ∈ ts}`, computed degreewise in the
    /// monomial coordinates of `S_i`.
    pub fn ann_piece_direct(&self, ts: &[i64], i: i64) -> Subspace<F> {
        let field = self.field();
        if i < 0 {
            return Subspace::zero(0);
        }
        let monos = Monomial::all_of_degree(self.ring().nvars(), i as u32);
        let mut columns: Vec<Vec<F::Elem>> = vec![Vec::new(); monos.len()];
        for &u in ts {
            let piece = self.omega_piece(u);
            for w in piece.space.basis() {
                let wp = self.to_polynomial(w, u);
                for (k, m) in monos.iter().enumerate() {
                    columns[k].extend(self.to_coords(&wp.mul_monomial(m), u + i));
                }
            }
        }
        let nrows = columns.first().map_or(0, |c| c.len());
        if nrows == 0 {
            return Subspace::full(field, monos.len());
        }
        let rows: Vec<Vec<F::Elem>> = (0..nrows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
        Subspace::new(field, monos.len(), linalg::kernel(field, &rows, monos.len()))
    }

    pub fn is_faithful_component(&self, t: i64) -> Result<bool> {
        let ann = self.ann_component(t)?;
        ann.is_subset_of(self.algebra.ideal())
    }

    /// Number of minimal generators of `ω` in each degree `t ∈ [-a, d]`.
    pub fn generator_counts(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for t in -self.a..=self.d() as i64 {
            let full = self.omega_piece(t);
            let low = self.maximal_times_omega(t);
            let fresh = full.dim() - low.dim();
            if fresh > 0 {
                out.insert(t, fresh);
            }
        }
        out
    }
}

/// `g` generic combinations of a basis of `[I]_δ`, `δ` the largest minimal
/// generator degree, forming a regular sequence.
pub fn choose_regular_sequence<F: Field, R: Rng + ?Sized>(
    algebra: &GradedAlgebra<F>,
    rng: &mut R,
) -> Result<Vec<Polynomial<F>>> {
    let ring = algebra.ring();
    let ideal = algebra.ideal();
    let g = algebra.codim();
    if g == 0 {
        return Ok(Vec::new());
    }
    let degs = ideal.generator_degrees()?;
    let delta = *degs.iter().max().expect("nonzero ideal of positive codimension");
    let piece = ideal.graded_piece(delta as i64)?;
    let basis: Vec<Polynomial<F>> = piece.ideal_part.basis().iter().map(|v| from_coords(ring, v, &piece.monomials)).collect();
    if basis.len() == g {
        let cand = basis.clone();
        if Ideal::new(ring, cand.clone())?.codim()? == g {
            return Ok(cand);
        }
    }
    for _ in 0..GENERIC_RETRIES {
        let cand: Vec<Polynomial<F>> = (0..g).map(|_| random_combination(ring, &basis, rng)).collect();
        if cand.iter().any(|c| c.is_zero()) {
            continue;
        }
        if Ideal::new(ring, cand.clone())?.codim()? == g {
            return Ok(cand);
        }
    }
    Err(Error::NoRegularSequence)
}

/// Invariants of a standard graded algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub d: usize,
    pub e: i64,
    pub g: usize,
    pub is_cm: bool,
    pub hilbert_numerator: Vec<i64>,
    pub a: Option<i64>,
    pub b: Option<i64>,
    pub c: Option<i64>,
    #[serde(rename = "type")]
    pub cm_type: Option<usize>,
    pub is_level: Option<bool>,
    pub is_gorenstein: Option<bool>,
    pub alpha_ub: Option<i64>,
    /// Minimal generators of `ω` per degree.
    pub omega_generators: BTreeMap<i64, usize>,
}

/// Full report for CM rings, a partial one (`d`, `e`, `g`) otherwise.
pub fn invariants<F: Field, R: Rng + ?Sized>(algebra: &GradedAlgebra<F>, rng: &mut R) -> Result<(InvariantReport, Option<CanonicalRep<F>>)> {
    let mut report = InvariantReport {
        d: algebra.dim(),
        e: algebra.multiplicity(),
        g: algebra.codim(),
        is_cm: false,
        hilbert_numerator: algebra.series().numerator.clone(),
        a: None,
        b: None,
        c: None,
        cm_type: None,
        is_level: None,
        is_gorenstein: None,
        alpha_ub: None,
        omega_generators: BTreeMap::new(),
    };
    if !algebra.is_cohen_macaulay(rng)? {
        return Ok((report, None));
    }
    report.is_cm = true;
    let rep = CanonicalRep::new(algebra, rng)?;
    let a = rep.a();
    let d = rep.d() as i64;
    let gens = rep.generator_counts();
    let c = -*gens.keys().max().expect("ω is nonzero");
    let cm_type: usize = gens.values().sum();
    let b = compute_b(&rep)?;
    report.a = Some(a);
    report.b = Some(b);
    report.c = Some(c);
    report.cm_type = Some(cm_type);
    report.is_level = Some(gens.len() == 1);
    report.is_gorenstein = Some(cm_type == 1);
    report.alpha_ub = Some(alpha_upper_bound(algebra)?);
    report.omega_generators = gens;
    if !(c <= b && b <= a && c >= -d && a + d >= 0) {
        return Err(Error::Internal(format!("invariant inequalities fail: a={a} b={b} c={c} d={d}")));
    }
    Ok((report, Some(rep)))
}

/// `b = -min{t : [ω]_t R faithful}`, searching `t ∈ [-a, d]`.
pub fn compute_b<F: Field>(rep: &CanonicalRep<F>) -> Result<i64> {
    for t in -rep.a()..=rep.d() as i64 {
        if rep.is_faithful_component(t)? {
            return Ok(-t);
        }
    }
    Err(Error::Internal("no faithful graded component of ω up to degree d".into()))
}

/// `Σ_{i≤g} δ_i - n` for minimal generator degrees `δ_1 ≥ δ_2 ≥ ...`.
pub fn alpha_upper_bound<F: Field>(algebra: &GradedAlgebra<F>) -> Result<i64> {
    let mut degs = algebra.ideal().generator_degrees()?;
    degs.sort_unstable_by(|a, b| b.cmp(a));
    let g = algebra.codim();
    Ok(degs.iter().take(g).map(|&d| d as i64).sum::<i64>() - algebra.nvars() as i64)
}

/// Graded dimensions of `Tor_i^S(k, R)` over the degree window, computed as
/// Koszul homology of the variables on `R`.
pub fn koszul_tor_dims<F: Field>(
    algebra: &GradedAlgebra<F>,
    index: usize,
    window: std::ops::RangeInclusive<i64>,
) -> Result<BTreeMap<i64, usize>> {
    const MAX_ENTRIES: usize = 4_000_000;
    let n = algebra.nvars();
    if index > n {
        return Ok(window.map(|d| (d, 0)).collect());
    }
    let mut out = BTreeMap::new();
    for deg in window {
        let c_i = koszul_space_dim(algebra, index, deg);
        if c_i == 0 {
            out.insert(deg, 0);
            continue;
        }
        let size = c_i * (koszul_space_dim(algebra, index.wrapping_sub(1), deg) + koszul_space_dim(algebra, index + 1, deg));
        if size > MAX_ENTRIES {
            return Err(Error::SizeLimit(format!("Koszul complex in degree {deg} is too large")));
        }
        let r_out = if index == 0 { 0 } else { koszul_rank(algebra, index, deg) };
        let r_in = if index == n { 0 } else { koszul_rank(algebra, index + 1, deg) };
        out.insert(deg, c_i - r_out - r_in);
    }
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// `dim (∧^i k^n ⊗ R)_deg = C(n, i) · HF_R(deg - i)`.
fn koszul_space_dim<F: Field>(algebra: &GradedAlgebra<F>, i: usize, deg: i64) -> usize {
    let n = algebra.nvars();
    if i > n {
        return 0;
    }
    subsets(n, i).len() * algebra.hilbert_function(deg - i as i64) as usize
}

/// Rank of the Koszul differential `K_i -> K_{i-1}` in internal degree `deg`.
fn koszul_rank<F: Field>(algebra: &GradedAlgebra<F>, i: usize, deg: i64) -> usize {
    let n = algebra.nvars();
    let field = algebra.field();
    let src_deg = deg - i as i64;
    let tgt_deg = src_deg + 1;
    if src_deg < 0 {
        return 0;
    }
    let red = algebra.ideal().reducer();
    let std_of = |d: i64| -> Vec<Monomial> {
        Monomial::all_of_degree(n, d as u32).into_iter().filter(|m| !red.is_reducible(m)).collect()
    };
    let src_std = std_of(src_deg);
    let tgt_std = std_of(tgt_deg);
    if src_std.is_empty() || tgt_std.is_empty() {
        return 0;
    }
    let src_sets = subsets(n, i);
    let tgt_sets = subsets(n, i - 1);
    let tgt_index: BTreeMap<&Vec<usize>, usize> = tgt_sets.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let width = tgt_sets.len() * tgt_std.len();
    let ring = algebra.ring();
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for set in &src_sets {
        for m in &src_std {
            let mut row = vec![field.zero(); width];
            for (pos, &j) in set.iter().enumerate() {
                let mut rest = set.clone();
                rest.remove(pos);
                let block = tgt_index[&rest];
                let img = red.reduce(&Polynomial::monomial(ring, m.mul(&Monomial::var(j))));
                let sign_neg = pos % 2 == 1;
                for (mm, c) in img.terms() {
                    let k = tgt_std.iter().position(|s| s == mm).expect("standard monomial");
                    let c = if sign_neg { field.neg(c) } else { c.clone() };
                    let slot = &mut row[block * tgt_std.len() + k];
                    *slot = field.add(slot, &c);
                }
            }
            rows.push(row);
        }
    }
    linalg::rank(field, &rows)
}
