//! Standard graded algebras `R = S/I`. Ideals of `R` are represented by
//! their preimages in `S`, which always contain `I`.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hilbert::HilbertSeries;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};

/// Attempts before giving up on a random generic choice.
pub const GENERIC_RETRIES: usize = 20;

#[derive(Clone, Debug)]
pub struct GradedAlgebra<F: Field> {
    ideal: Ideal<F>,
    series: HilbertSeries,
}

impl<F: Field> GradedAlgebra<F> {
    pub fn new(ideal: Ideal<F>) -> Result<Self> {
        if !ideal.is_homogeneous() {
            return Err(Error::NotHomogeneous("graded algebra"));
        }
        let series = ideal.hilbert_series()?;
        Ok(GradedAlgebra { ideal, series })
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        self.ideal.ring()
    }

    pub fn field(&self) -> &F {
        self.ideal.field()
    }

    pub fn nvars(&self) -> usize {
        self.ring().nvars()
    }

    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn series(&self) -> &HilbertSeries {
        &self.series
    }

    pub fn dim(&self) -> usize {
        self.series.dim
    }

    pub fn multiplicity(&self) -> i64 {
        self.series.multiplicity()
    }

    /// Codimension of `I` in `S`.
    pub fn codim(&self) -> usize {
        self.nvars() - self.dim()
    }

    pub fn hilbert_function(&self, delta: i64) -> u64 {
        self.ideal.hilbert_function(delta).expect("homogeneous")
    }

    /// `K + I`.
    pub fn lift(&self, k: &Ideal<F>) -> Result<Ideal<F>> {
        k.sum(&self.ideal)
    }

    pub fn ideal_of(&self, gens: Vec<Polynomial<F>>) -> Result<Ideal<F>> {
        Ideal::new(self.ring(), gens)?.sum(&self.ideal)
    }

    /// `m^k R`.
    pub fn maximal_power(&self, k: i64) -> Result<Ideal<F>> {
        self.lift(&Ideal::maximal_power(self.ring(), k))
    }

    /// `(ys)^i R`.
    pub fn power_of(&self, ys: &[Polynomial<F>], i: i64) -> Result<Ideal<F>> {
        self.lift(&Ideal::power_of_gens(self.ring(), ys, i)?)
    }

    /// `(y_1^i, ..., y_d^i) R`.
    pub fn bracket_power(&self, ys: &[Polynomial<F>], i: i64) -> Result<Ideal<F>> {
        self.lift(&Ideal::bracket_power(self.ring(), ys, i)?)
    }

    /// `A :_R B` for ideals of `R`; the result contains `I`.
    pub fn colon(&self, a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
        self.lift(a)?.quotient(b)
    }

    /// `A :_R m^j`.
    pub fn colon_maximal_power(&self, a: &Ideal<F>, j: i64) -> Result<Ideal<F>> {
        self.lift(a)?.quotient_by_maximal_power(j)
    }

    /// `A B` in `R`.
    pub fn product(&self, a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
        self.lift(&a.product(b)?)
    }

    /// Equality as ideals of `R`.
    pub fn equal(&self, a: &Ideal<F>, b: &Ideal<F>) -> Result<bool> {
        self.lift(a)?.equals(&self.lift(b)?)
    }

    pub fn contained(&self, a: &Ideal<F>, b: &Ideal<F>) -> Result<bool> {
        a.is_subset_of(&self.lift(b)?)
    }

    /// Whether the ideal `a` of `R` is zero.
    pub fn is_zero_ideal(&self, a: &Ideal<F>) -> Result<bool> {
        a.is_subset_of(&self.ideal)
    }

    /// Smallest degree of an element of `a` that is nonzero in `R`.
    pub fn initial_degree(&self, a: &Ideal<F>) -> Result<Option<u32>> {
        let red = self.ideal.reducer();
        let lifted = self.lift(a)?;
        Ok(lifted
            .groebner_basis()
            .iter()
            .chain(a.gens())
            .filter(|g| !red.reduce(g).is_zero())
            .filter_map(|g| g.degree())
            .min())
    }

    /// Minimal generator degrees of the ideal `a` of `R`.
    pub fn generator_degrees(&self, a: &Ideal<F>) -> Result<Vec<u32>> {
        let lifted = self.lift(a)?;
        let mut gens = lifted.minimal_generators()?;
        gens.sort_by_key(|g| g.degree());
        // drop generators belonging to I, keeping a minimal set modulo I
        let mut kept: Vec<Polynomial<F>> = Vec::new();
        let mut current = self.ideal.clone();
        for g in gens {
            if !current.contains(&g)? {
                kept.push(g.clone());
                current = current.add_gens(&[g])?;
            }
        }
        Ok(kept.iter().map(|g| g.degree().unwrap()).collect())
    }

    /// `λ(S/K)` for an m-primary ideal `K ⊇ I`.
    pub fn length(&self, k: &Ideal<F>) -> Result<u64> {
        let lifted = self.lift(k)?;
        if lifted.is_unit() {
            return Ok(0);
        }
        let hs = lifted.hilbert_series()?;
        if hs.dim != 0 {
            return Err(Error::NotMPrimary);
        }
        Ok(hs.multiplicity() as u64)
    }

    /// Dimension of `R/aR`.
    pub fn dim_of_quotient(&self, a: &Ideal<F>) -> Result<Option<usize>> {
        let lifted = self.lift(a)?;
        if lifted.is_unit() {
            return Ok(None);
        }
        Ok(Some(lifted.dimension()?))
    }

    /// Height of the ideal `a` of `R`, as `dim R - dim R/a`.
    pub fn height(&self, a: &Ideal<F>) -> Result<Option<usize>> {
        Ok(self.dim_of_quotient(a)?.map(|d| self.dim() - d))
    }

    pub fn random_form<R: Rng + ?Sized>(&self, deg: u32, rng: &mut R) -> Polynomial<F> {
        random_form(self.ring(), deg, rng)
    }

    /// `d` random linear forms generating a parameter ideal of `R`.
    pub fn generic_linear_sop<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<Polynomial<F>>> {
        self.generic_sop_of_degree(1, rng)
    }

    /// `d` random forms of degree `deg` generating a parameter ideal.
    pub fn generic_sop_of_degree<R: Rng + ?Sized>(&self, deg: u32, rng: &mut R) -> Result<Vec<Polynomial<F>>> {
        if self.ideal.is_unit() {
            return Err(Error::UnitIdeal("generic_linear_sop"));
        }
        let d = self.dim();
        for _ in 0..GENERIC_RETRIES {
            let ys: Vec<Polynomial<F>> = (0..d).map(|_| self.random_form(deg, rng)).collect();
            if self.is_parameter_ideal(&ys)? {
                return Ok(ys);
            }
        }
        Err(Error::NoLinearSop)
    }

    /// Whether `dim R/(ys) = 0` with `#ys = dim R`.
    pub fn is_parameter_ideal(&self, ys: &[Polynomial<F>]) -> Result<bool> {
        if ys.len() != self.dim() {
            return Ok(false);
        }
        let q = self.ideal_of(ys.to_vec())?;
        Ok(q.is_m_primary())
    }

    /// Cohen-Macaulay test: `λ(R/(y)) = e(R)` for a linear system of parameters.
    pub fn cm_length_test(&self, ys: &[Polynomial<F>]) -> Result<(bool, u64)> {
        let len = self.length(&Ideal::new(self.ring(), ys.to_vec())?)?;
        Ok((len == self.multiplicity() as u64, len))
    }

    pub fn is_cohen_macaulay<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<bool> {
        if self.dim() == 0 {
            return Ok(true);
        }
        let ys = self.generic_linear_sop(rng)?;
        Ok(self.cm_length_test(&ys)?.0)
    }
}

/// Uniformly random form of degree `deg`.
pub fn random_form<F: Field, R: Rng + ?Sized>(ring: &Arc<Ring<F>>, deg: u32, rng: &mut R) -> Polynomial<F> {
    let terms = Monomial::all_of_degree(ring.nvars(), deg)
        .into_iter()
        .map(|m| (m, ring.field.random(rng)))
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// Random linear combination of `polys`.
pub fn random_combination<F: Field, R: Rng + ?Sized>(
    ring: &Arc<Ring<F>>,
    polys: &[Polynomial<F>],
    rng: &mut R,
) -> Polynomial<F> {
    let mut acc = Polynomial::zero(ring);
    for p in polys {
        acc = &acc + &p.scale(&ring.field.random(rng));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn algebra(n: usize, gens: &[&str]) -> GradedAlgebra<PrimeField> {
        let r = Ring::with_indexed_vars(PrimeField::default_prime(), n).unwrap();
        GradedAlgebra::new(Ideal::parse(&r, gens).unwrap()).unwrap()
    }

    #[test]
    fn sop_of_polynomial_ring_in_one_variable() {
        let a = algebra(1, &[]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ys = a.generic_linear_sop(&mut rng).unwrap();
        assert_eq!(ys.len(), 1);
        assert_eq!(ys[0].monic(), Polynomial::var(a.ring(), 0));
    }

    #[test]
    fn four_points_length_equals_multiplicity() {
        let a = algebra(3, &["x0*x1", "x0*(x0-x2)", "x1*(x1-x2)*(x1+x2)"]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let ys = a.generic_linear_sop(&mut rng).unwrap();
        assert_eq!(a.cm_length_test(&ys).unwrap(), (true, 4));
    }

    #[test]
    fn skew_lines_are_not_cm() {
        let a = algebra(4, &["x0", "x1"]).ideal().intersection(algebra(4, &["x2", "x3"]).ideal()).unwrap();
        let r = a.ring().clone();
        let b = GradedAlgebra::new(Ideal::new(&r, a.gens().to_vec()).unwrap()).unwrap();
        assert_eq!((b.dim(), b.multiplicity()), (2, 2));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ys = b.generic_linear_sop(&mut rng).unwrap();
        let (cm, len) = b.cm_length_test(&ys).unwrap();
        assert!(!cm);
        assert!(len > 2);
    }

    #[test]
    fn unit_ideal_is_rejected() {
        let r = Ring::with_indexed_vars(PrimeField::default_prime(), 2).unwrap();
        assert!(GradedAlgebra::new(Ideal::unit(&r)).is_err());
    }
}
