//! Finite sets of reduced points in projective space: vanishing ideals,
//! separators, the conductor, the core and the Cayley-Bacharach property.

use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::cores::{core_formula, core_oracle, OraclePolicy, OracleVerdict};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::identities::Context;
use crate::ideal::Ideal;
use crate::linalg;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};
use crate::report::Report;

#[derive(Clone, Debug)]
pub struct PointSet<F: Field> {
    ring: Arc<Ring<F>>,
    points: Vec<Vec<F::Elem>>,
    ideal: OnceLock<Ideal<F>>,
}

impl<F: Field> PointSet<F> {
    /// Points are rescaled so their last nonzero coordinate is one.
    pub fn new(ring: &Arc<Ring<F>>, points: Vec<Vec<F::Elem>>) -> Result<Self> {
        let field = &ring.field;
        let mut normalized: Vec<Vec<F::Elem>> = Vec::with_capacity(points.len());
        for p in points {
            if p.len() != ring.nvars() {
                return Err(Error::LengthMismatch { expected: ring.nvars(), found: p.len() });
            }
            let Some(k) = p.iter().rposition(|c| !field.is_zero(c)) else {
                return Err(Error::Precondition("the zero vector is not a projective point".into()));
            };
            let inv = field.inv(&p[k]).expect("nonzero");
            let q: Vec<F::Elem> = p.iter().map(|c| field.mul(c, &inv)).collect();
            if let Some(j) = normalized.iter().position(|r| r == &q) {
                return Err(Error::DuplicatePoint(j, normalized.len()));
            }
            normalized.push(q);
        }
        Ok(PointSet { ring: ring.clone(), points: normalized, ideal: OnceLock::new() })
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ring.nvars() - 1
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<F::Elem>] {
        &self.points
    }

    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        Self::new(&self.ring, indices.iter().map(|&i| self.points[i].clone()).collect())
    }

    pub fn without(&self, i: usize) -> Result<Self> {
        let keep: Vec<usize> = (0..self.len()).filter(|&k| k != i).collect();
        self.subset(&keep)
    }

    /// Disjoint union; shared points are an error.
    pub fn union(&self, other: &Self) -> Result<Self> {
        Self::new(&self.ring, self.points.iter().chain(&other.points).cloned().collect())
    }

    /// The `n` linear forms `x_i - p_i x_k`, `k` the last nonzero position.
    pub fn point_ideal(&self, p: &[F::Elem]) -> Result<Ideal<F>> {
        let field = self.field();
        let k = p.iter().rposition(|c| !field.is_zero(c)).expect("normalized point");
        let xk = Polynomial::var(&self.ring, k);
        let gens = (0..self.ring.nvars())
            .filter(|&i| i != k)
            .map(|i| &Polynomial::var(&self.ring, i) - &xk.scale(&p[i]))
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// `I_X` as the intersection of the point ideals, checked against the
    /// points and the eventual Hilbert function `s`.
    pub fn vanishing_ideal(&self) -> Result<&Ideal<F>> {
        if let Some(i) = self.ideal.get() {
            return Ok(i);
        }
        let mut acc = Ideal::unit(&self.ring);
        for p in &self.points {
            acc = acc.intersection(&self.point_ideal(p)?)?;
        }
        for g in acc.gens() {
            for p in &self.points {
                if !self.field().is_zero(&g.evaluate(p)?) {
                    return Err(Error::Internal("vanishing ideal misses a point".into()));
                }
            }
        }
        let s = self.len() as i64;
        if !self.is_empty() && acc.hilbert_function(s)? != s as u64 {
            return Err(Error::Internal("Hilbert function of the points does not reach s".into()));
        }
        Ok(self.ideal.get_or_init(|| acc))
    }

    pub fn algebra(&self) -> Result<GradedAlgebra<F>> {
        GradedAlgebra::new(self.vanishing_ideal()?.clone())
    }

    pub fn a_invariant(&self) -> Result<i64> {
        Ok(self.vanishing_ideal()?.hilbert_series()?.a_invariant())
    }

    /// Rows: points; columns: monomials of degree `deg`.
    fn evaluation_rows(&self, deg: u32, skip: Option<usize>) -> (Vec<Monomial>, Vec<Vec<F::Elem>>) {
        let field = self.field();
        let monos = Monomial::all_of_degree(self.ring.nvars(), deg);
        let rows = self
            .points
            .iter()
            .enumerate()
            .filter(|(k, _)| Some(*k) != skip)
            .map(|(_, p)| {
                monos
                    .iter()
                    .map(|m| {
                        (0..self.ring.nvars()).fold(field.one(), |acc, i| field.mul(&acc, &field.pow(&p[i], m.exp(i) as u64)))
                    })
                    .collect()
            })
            .collect();
        (monos, rows)
    }

    /// `HF(X, δ)` as the rank of the evaluation map on `[S]_δ`.
    pub fn hilbert_function_by_evaluation(&self, deg: i64) -> usize {
        self.rank_without(deg, None)
    }

    fn rank_without(&self, deg: i64, skip: Option<usize>) -> usize {
        if deg < 0 {
            return 0;
        }
        let (_, rows) = self.evaluation_rows(deg as u32, skip);
        linalg::rank(self.field(), &rows)
    }

    /// Least `δ` with `HF(X, δ) - HF(X \ P_i, δ) = 1`, for every `i`.
    pub fn separator_degrees(&self) -> Vec<u32> {
        let s = self.len();
        (0..s)
            .map(|i| {
                (0..=s as i64)
                    .find(|&deg| self.rank_without(deg, None) - self.rank_without(deg, Some(i)) == 1)
                    .expect("a separator exists in degree s - 1") as u32
            })
            .collect()
    }

    /// One separator of least degree per point. With `rng`, a random kernel
    /// element is added to each particular solution.
    pub fn minimal_separators<R: Rng + ?Sized>(&self, rng: Option<&mut R>) -> Result<Vec<Polynomial<F>>> {
        let field = self.field();
        let degrees = self.separator_degrees();
        let mut rng = rng;
        let mut out = Vec::with_capacity(self.len());
        for (i, &deg) in degrees.iter().enumerate() {
            let (monos, rows) = self.evaluation_rows(deg, None);
            let rhs: Vec<F::Elem> = (0..self.len()).map(|j| if i == j { field.one() } else { field.zero() }).collect();
            let mut sol = linalg::solve(field, &rows, &rhs, monos.len())
                .ok_or_else(|| Error::Internal(format!("no separator of degree {deg} for point {i}")))?;
            if let Some(r) = rng.as_deref_mut() {
                for v in linalg::kernel(field, &rows, monos.len()) {
                    let c = field.random(r);
                    for (x, y) in sol.iter_mut().zip(&v) {
                        *x = field.add(x, &field.mul(&c, y));
                    }
                }
            }
            let f = Polynomial::from_terms(
                &self.ring,
                monos.iter().zip(sol).filter(|(_, c)| !field.is_zero(c)).map(|(m, c)| (*m, c)).collect(),
            );
            for (j, p) in self.points.iter().enumerate() {
                let want = if i == j { field.one() } else { field.zero() };
                if f.evaluate(p)? != want {
                    return Err(Error::Internal("separator fails evaluation".into()));
                }
            }
            out.push(f);
        }
        Ok(out)
    }

    /// `𝒞 = I_X + (f_1, ..., f_s)`.
    pub fn conductor_from(&self, separators: &[Polynomial<F>]) -> Result<Ideal<F>> {
        self.vanishing_ideal()?.add_gens(separators)
    }

    /// The conductor, checked to contain `m^{a+1}` and to be independent of
    /// the separators chosen.
    pub fn conductor<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Ideal<F>> {
        let c = self.conductor_from(&self.minimal_separators::<R>(None)?)?;
        let other = self.conductor_from(&self.minimal_separators(Some(rng))?)?;
        if !c.equals(&other)? {
            return Err(Error::Internal("conductor depends on the separators".into()));
        }
        let a = self.a_invariant()?;
        if !self.algebra()?.maximal_power(a + 1)?.is_subset_of(&c)? {
            return Err(Error::Internal("conductor does not contain m^(a+1)".into()));
        }
        Ok(c)
    }

    /// `core X` as `m 𝒞`, as `J^{a+2} : m^{a+1}` and by the oracle, with
    /// `y 𝒞 = m 𝒞` for a general linear `y`.
    pub fn core<R: Rng + ?Sized>(&self, rng: &mut R, policy: OraclePolicy) -> Result<PointsCore<F>> {
        let alg = self.algebra()?;
        let conductor = self.conductor(rng)?;
        let m_c = alg.product(&Ideal::maximal(&self.ring), &conductor)?;
        let formula = core_formula(&alg, 1, rng)?.ideal;
        if !formula.equals(&m_c)? {
            return Err(Error::Internal("core of points: formula and m·C differ".into()));
        }
        let ys = alg.generic_linear_sop(rng)?;
        let y_c = alg.product(&Ideal::new(&self.ring, ys)?, &conductor)?;
        let y_equals_m = y_c.equals(&m_c)?;
        let run = core_oracle(&alg, 1, rng, policy)?;
        let oracle_agrees = match run.verdict {
            OracleVerdict::Stabilized => Some(run.ideal.equals(&m_c)?),
            OracleVerdict::Inconclusive => None,
        };
        if oracle_agrees == Some(false) {
            return Err(Error::Internal("core of points: oracle and m·C differ".into()));
        }
        Ok(PointsCore { core: m_c, conductor, y_equals_m, oracle_agrees, oracle_rounds: run.rounds })
    }

    /// Cayley-Bacharach by definition, by separator degrees and by the core.
    pub fn cayley_bacharach<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<CBReport> {
        let s = self.len();
        if s < 2 {
            return Err(Error::Precondition("Cayley-Bacharach needs at least two points".into()));
        }
        let hfs: Vec<Vec<usize>> = (0..s).map(|i| (0..=s as i64).map(|deg| self.rank_without(deg, Some(i))).collect()).collect();
        let by_definition = hfs.iter().all(|h| h == &hfs[0]);
        let degrees = self.separator_degrees();
        let equal_degrees = degrees.iter().all(|&d| d == degrees[0]);
        let alg = self.algebra()?;
        let a = self.a_invariant()?;
        let core = core_formula(&alg, 1, rng)?.ideal;
        let core_is_power = core.equals(&alg.maximal_power(a + 2)?)?;
        let conductor = self.conductor(rng)?;
        Ok(CBReport {
            is_cb: by_definition,
            equal_separator_degrees: equal_degrees,
            core_is_power,
            agree: by_definition == equal_degrees && equal_degrees == core_is_power,
            separator_degrees: degrees,
            a,
            core: core.canonical_strings(),
            conductor: conductor.canonical_strings(),
        })
    }

    /// Consistency of separator degrees: the largest is `a + 1`, also after
    /// deleting any one point.
    pub fn verify_separator_degrees(&self, report: &mut Report) -> Result<()> {
        let a = self.a_invariant()?;
        let degrees = self.separator_degrees();
        let top = degrees.iter().copied().max().map(i64::from);
        report.record_with("max separator degree = a+1", format!("s={}", self.len()), top == Some(a + 1), format!("{degrees:?}, a = {a}"));
        if self.len() > 1 {
            let mut ok = true;
            for i in 0..self.len() {
                let smaller = self.without(i)?;
                let a_i = smaller.a_invariant()?;
                ok &= smaller.separator_degrees().iter().all(|&d| i64::from(d) <= a_i + 1);
            }
            report.record("deletion keeps separator degrees ≤ a+1", format!("s={}", self.len()), ok);
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct PointsCore<F: Field> {
    pub core: Ideal<F>,
    pub conductor: Ideal<F>,
    pub y_equals_m: bool,
    pub oracle_agrees: Option<bool>,
    pub oracle_rounds: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CBReport {
    pub is_cb: bool,
    pub equal_separator_degrees: bool,
    pub core_is_power: bool,
    pub agree: bool,
    pub separator_degrees: Vec<u32>,
    pub a: i64,
    pub core: Vec<String>,
    pub conductor: Vec<String>,
}

/// `m^{a+2} + f m^e ⊆ m^{a+2} + f m^{a'+2} ⊆ core X ⊆ m^{b+2}` for
/// `X = Y ∪ Z`, `f` vanishing on `Y`, `e = |Z|`, `a' = a(Z)`.
pub fn verify_yz<F: Field, R: Rng + ?Sized>(
    y: &PointSet<F>,
    z: &PointSet<F>,
    f: &Polynomial<F>,
    label: &str,
    rng: &mut R,
    report: &mut Report,
) -> Result<()> {
    if z.is_empty() {
        report.skip("Y and Z", label, "Z is empty");
        return Ok(());
    }
    for p in y.points() {
        if !y.field().is_zero(&f.evaluate(p)?) {
            return Err(Error::Precondition("f does not vanish on Y".into()));
        }
    }
    let x = y.union(z)?;
    let alg = x.algebra()?;
    let (inv, _) = crate::canonical::invariants(&alg, rng)?;
    let (a, b) = (inv.a.expect("points are CM"), inv.b.expect("points are CM"));
    let e = z.len() as i64;
    let a_z = z.a_invariant()?;
    let ring = x.ring();
    let f_times = |k: i64| -> Result<Ideal<F>> { alg.maximal_power(a + 2)?.sum(&Ideal::maximal_power(ring, k).scale_by(f)?) };
    let outer = f_times(e)?;
    let inner = f_times(a_z + 2)?;
    let core = core_formula(&alg, 1, rng)?.ideal;
    let sample = format!("{label} e={e} a'={a_z}");
    report.record("Y and Z: f m^e ⊆ f m^(a'+2)", sample.clone(), outer.is_subset_of(&inner)?);
    report.record("Y and Z: ⊆ core", sample.clone(), inner.is_subset_of(&core)?);
    report.record("Y and Z: core ⊆ m^(b+2)", sample, core.is_subset_of(&alg.maximal_power(b + 2)?)?);
    Ok(())
}

impl<F: Field> Context<F> {
    /// `J^i : m^j = m^{i-j} 𝒞` for `i ≥ j ≥ a+1` in dimension one.
    pub fn verify_colon_via_conductor(&self, conductor: &Ideal<F>, i: i64, j: i64, report: &mut Report) -> Result<()> {
        let sample = format!("i={i} j={j}");
        if self.d() != 1 || !(i >= j && j > self.a()) {
            report.skip("coreandS", sample, "needs d = 1 and i ≥ j ≥ a+1");
            return Ok(());
        }
        let rhs = self.algebra().product(&Ideal::maximal_power(self.algebra().ring(), i - j), conductor)?;
        report.record("coreandS", sample, self.colon(i, j)?.equals(&rhs)?);
        Ok(())
    }
}

/// `[ω]_{≥2} = core X · ω` for points.
pub fn verify_separators_b<F: Field>(ctx: &Context<F>, report: &mut Report) -> Result<()> {
    report.record("separators(b)", "ω", ctx.omega_truncation_is_core_times_omega()?);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::parse::parse_polynomial;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn four_points<F: Field>(field: F) -> PointSet<F> {
        let ring = Ring::with_indexed_vars(field.clone(), 3).unwrap();
        let pts = [[0, -1, 1], [0, 0, 1], [0, 1, 1], [1, 0, 1]]
            .iter()
            .map(|p| p.iter().map(|&c| field.from_i64(c)).collect())
            .collect();
        PointSet::new(&ring, pts).unwrap()
    }

    fn ideal<F: Field>(r: &Arc<Ring<F>>, gens: &[&str]) -> Ideal<F> {
        Ideal::parse(r, gens).unwrap()
    }

    #[test]
    fn normalization_and_duplicates() {
        let f = PrimeField::default_prime();
        let ring = Ring::with_indexed_vars(f.clone(), 2).unwrap();
        let p = PointSet::new(&ring, vec![vec![2, 4]]).unwrap();
        assert_eq!(p.points()[0], vec![f.inv(&2).unwrap(), 1]);
        assert!(matches!(PointSet::new(&ring, vec![vec![1, 2], vec![2, 4]]), Err(Error::DuplicatePoint(0, 1))));
        assert!(PointSet::new(&ring, vec![vec![0, 0]]).is_err());
    }

    #[test]
    fn small_vanishing_ideals() {
        let f = PrimeField::default_prime();
        let r2 = Ring::with_indexed_vars(f.clone(), 2).unwrap();
        let two = PointSet::new(&r2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(two.vanishing_ideal().unwrap().equals(&ideal(&r2, &["x0*x1"])).unwrap());
        let r3 = Ring::with_indexed_vars(f, 3).unwrap();
        let one = PointSet::new(&r3, vec![vec![1, 0, 0]]).unwrap();
        assert!(one.vanishing_ideal().unwrap().equals(&ideal(&r3, &["x1", "x2"])).unwrap());
        assert_eq!(one.separator_degrees(), vec![0]);
    }

    #[test]
    fn four_point_example_over_both_fields() {
        fn run<F: Field>(field: F) {
            let x = four_points(field);
            let r = x.ring().clone();
            let expected = ideal(&r, &["x0*x1", "x0*(x0-x2)", "x1*(x1-x2)*(x1+x2)"]);
            assert!(x.vanishing_ideal().unwrap().equals(&expected).unwrap());
            assert_eq!(x.a_invariant().unwrap(), 1);
            assert_eq!(x.separator_degrees(), vec![2, 2, 2, 1]);
            for d in 0..5 {
                assert_eq!(x.hilbert_function_by_evaluation(d) as u64, expected.hilbert_function(d).unwrap());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            let conductor = x.conductor(&mut rng).unwrap();
            let four = expected.add_gens(
                &["x1*(x1-x2)", "(x0-x1-x2)*(x1-x2)", "x1*(x1+x2)", "x0"].map(|s| parse_polynomial(s, &r).unwrap()),
            );
            assert!(conductor.equals(&four.unwrap()).unwrap());
            let core = x.core(&mut rng, OraclePolicy::default()).unwrap();
            let golden = expected.sum(&Ideal::maximal_power(&r, 3)).unwrap().add_gens(&[parse_polynomial("x0^2", &r).unwrap()]).unwrap();
            assert!(core.core.equals(&golden).unwrap());
            assert!(core.y_equals_m);
            assert_eq!(core.oracle_agrees, Some(true));
            let cb = x.cayley_bacharach(&mut rng).unwrap();
            assert!(!cb.is_cb && !cb.equal_separator_degrees && !cb.core_is_power && cb.agree);
        }
        run(PrimeField::default_prime());
        run(Rationals);
    }

    #[test]
    fn split_configuration() {
        let x = four_points(PrimeField::default_prime());
        let y = x.subset(&[0, 1, 2]).unwrap();
        let z = x.subset(&[3]).unwrap();
        assert_eq!(z.a_invariant().unwrap(), -1);
        let f = parse_polynomial("x0", x.ring()).unwrap();
        let mut report = Report::new();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        verify_yz(&y, &z, &f, "four points", &mut rng, &mut report).unwrap();
        assert!(report.all_passed() && report.checks.len() == 3, "{report:?}");
        let g = parse_polynomial("x1", x.ring()).unwrap();
        assert!(verify_yz(&y, &z, &g, "bad", &mut rng, &mut report).is_err());
    }

    #[test]
    fn generic_points_are_cb() {
        let f = PrimeField::default_prime();
        let ring = Ring::with_indexed_vars(f, 3).unwrap();
        let x = PointSet::new(&ring, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let cb = x.cayley_bacharach(&mut rng).unwrap();
        assert!(cb.is_cb && cb.agree);
        assert_eq!(cb.separator_degrees, vec![2, 2, 2, 2]);
    }
}
