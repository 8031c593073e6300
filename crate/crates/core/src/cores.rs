//! Cores of powers of the maximal ideal and of other m-primary ideals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{random_combination, GradedAlgebra, GENERIC_RETRIES};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::identities::Context;
use crate::ideal::Ideal;
use crate::poly::Polynomial;
use crate::report::Report;

/// Stopping rule for intersecting random reductions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OraclePolicy {
    /// Consecutive rounds without change before stopping.
    pub stable: usize,
    pub max_rounds: usize,
}

impl Default for OraclePolicy {
    fn default() -> Self {
        OraclePolicy { stable: 3, max_rounds: 25 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleVerdict {
    Stabilized,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct OracleRun<F: Field> {
    pub ideal: Ideal<F>,
    pub rounds: usize,
    pub verdict: OracleVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoreMethod {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Debug)]
pub struct CoreResult<F: Field> {
    pub ideal: Ideal<F>,
    pub method: CoreMethod,
    pub n: i64,
    /// The linear forms generating `J` for the formula.
    pub reduction: Vec<Polynomial<F>>,
    pub agreement: Option<bool>,
    pub oracle: Option<(usize, OracleVerdict)>,
    /// `m^{nd+a+1} ⊆ core(m^n)`.
    pub lower_exponent: i64,
    pub equals_lower_power: bool,
}

fn round_rng(master: u64, round: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(master ^ (round as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn require_core_setting<F: Field, R: Rng + ?Sized>(algebra: &GradedAlgebra<F>, n: i64, rng: &mut R) -> Result<()> {
    if algebra.dim() == 0 {
        return Err(Error::ZeroDimensional);
    }
    if n < 1 {
        return Err(Error::Precondition(format!("power n = {n} must be positive")));
    }
    if !algebra.is_cohen_macaulay(rng)? {
        return Err(Error::NotCohenMacaulay);
    }
    Ok(())
}

/// `core(m^n) = J^{nd+a+1} : m^{a+d}`, recomputed with a second generic
/// `J` and compared.
pub fn core_formula<F: Field, R: Rng + ?Sized>(algebra: &GradedAlgebra<F>, n: i64, rng: &mut R) -> Result<CoreResult<F>> {
    require_core_setting(algebra, n, rng)?;
    let d = algebra.dim() as i64;
    let a = algebra.series().a_invariant();
    let compute = |ys: &[Polynomial<F>]| -> Result<Ideal<F>> {
        algebra.colon_maximal_power(&algebra.power_of(ys, n * d + a + 1)?, a + d)
    };
    let ys = algebra.generic_linear_sop(rng)?;
    let core = compute(&ys)?;
    let other = compute(&algebra.generic_linear_sop(rng)?)?;
    if !core.equals(&other)? {
        return Err(Error::Internal("core formula depends on the choice of J".into()));
    }
    let lower = algebra.maximal_power(n * d + a + 1)?;
    Ok(CoreResult {
        equals_lower_power: core.equals(&lower)?,
        ideal: core,
        method: CoreMethod::Formula,
        n,
        reduction: ys,
        agreement: None,
        oracle: None,
        lower_exponent: n * d + a + 1,
    })
}

/// Intersection of `(K_r + I)` over rounds, stopping once it is unchanged
/// for `policy.stable` rounds.
fn stabilize<F: Field, R: Rng + ?Sized>(
    policy: OraclePolicy,
    rng: &mut R,
    mut sample: impl FnMut(&mut ChaCha8Rng) -> Result<Ideal<F>>,
) -> Result<OracleRun<F>> {
    let master: u64 = rng.gen();
    let mut acc: Option<Ideal<F>> = None;
    let mut unchanged = 0;
    for round in 0..policy.max_rounds {
        let k = sample(&mut round_rng(master, round))?;
        let next = match &acc {
            None => k,
            Some(prev) => prev.intersection(&k)?,
        };
        if let Some(prev) = &acc {
            if next.equals(prev)? {
                unchanged += 1;
            } else {
                unchanged = 0;
            }
        }
        acc = Some(next);
        if unchanged >= policy.stable {
            return Ok(OracleRun { ideal: acc.unwrap(), rounds: round + 1, verdict: OracleVerdict::Stabilized });
        }
    }
    Ok(OracleRun {
        ideal: acc.ok_or_else(|| Error::Precondition("oracle needs at least one round".into()))?,
        rounds: policy.max_rounds,
        verdict: OracleVerdict::Inconclusive,
    })
}

/// Intersection of parameter ideals generated by `d` general forms of
/// degree `n`.
pub fn core_oracle<F: Field, R: Rng + ?Sized>(
    algebra: &GradedAlgebra<F>,
    n: i64,
    rng: &mut R,
    policy: OraclePolicy,
) -> Result<OracleRun<F>> {
    require_core_setting(algebra, n, rng)?;
    stabilize(policy, rng, |r| {
        let forms = algebra.generic_sop_of_degree(n as u32, r)?;
        algebra.ideal_of(forms)
    })
}

/// Formula, oracle, or both with an agreement flag.
pub fn core_of_power<F: Field, R: Rng + ?Sized>(
    algebra: &GradedAlgebra<F>,
    n: i64,
    method: CoreMethod,
    rng: &mut R,
    policy: OraclePolicy,
) -> Result<CoreResult<F>> {
    match method {
        CoreMethod::Formula => core_formula(algebra, n, rng),
        CoreMethod::Oracle => {
            let run = core_oracle(algebra, n, rng, policy)?;
            let d = algebra.dim() as i64;
            let a = algebra.series().a_invariant();
            let lower = algebra.maximal_power(n * d + a + 1)?;
            Ok(CoreResult {
                equals_lower_power: run.ideal.equals(&lower)?,
                ideal: run.ideal,
                method,
                n,
                reduction: Vec::new(),
                agreement: None,
                oracle: Some((run.rounds, run.verdict)),
                lower_exponent: n * d + a + 1,
            })
        }
        CoreMethod::Both => {
            let mut res = core_formula(algebra, n, rng)?;
            let run = core_oracle(algebra, n, rng, policy)?;
            res.agreement = match run.verdict {
                OracleVerdict::Stabilized => Some(run.ideal.equals(&res.ideal)?),
                OracleVerdict::Inconclusive => None,
            };
            res.oracle = Some((run.rounds, run.verdict));
            res.method = method;
            Ok(res)
        }
    }
}

/// The formula result lies in every sampled parameter ideal of degree-`n`
/// forms.
pub fn contained_in_samples<F: Field, R: Rng + ?Sized>(
    algebra: &GradedAlgebra<F>,
    core: &Ideal<F>,
    n: i64,
    samples: usize,
    rng: &mut R,
) -> Result<bool> {
    for _ in 0..samples {
        let k = algebra.ideal_of(algebra.generic_sop_of_degree(n as u32, rng)?)?;
        if !core.is_subset_of(&k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Intersection of reductions of an m-primary ideal `Q` of `R`. Reductions
/// are generated by `d` general combinations of generators of `Q`: of one
/// degree when `Q` is generated in one degree, and with scalar
/// coefficients otherwise, in which case each reduction is replaced by its
/// component at the origin.
pub fn core_mprimary_oracle<F: Field, R: Rng + ?Sized>(
    algebra: &GradedAlgebra<F>,
    q: &Ideal<F>,
    rng: &mut R,
    policy: OraclePolicy,
) -> Result<OracleRun<F>> {
    let lifted = algebra.lift(q)?;
    if !lifted.is_homogeneous() {
        return Err(Error::NotHomogeneous("core_mprimary_oracle"));
    }
    if lifted.is_unit() || !lifted.is_m_primary() {
        return Err(Error::NotMPrimary);
    }
    let ring = algebra.ring();
    let d = algebra.dim();
    let mut gens = lifted.minimal_generators()?;
    gens.retain(|g| !algebra.ideal().contains(g).unwrap_or(true));
    let degrees: Vec<u32> = gens.iter().filter_map(|g| g.degree()).collect();
    let one_degree = degrees.windows(2).all(|w| w[0] == w[1]);
    if d == 0 {
        // Q is nilpotent, so the zero ideal is a reduction
        return Ok(OracleRun { ideal: algebra.ideal().clone(), rounds: 0, verdict: OracleVerdict::Stabilized });
    }
    let top = lifted.socle_bound()? as i64;
    stabilize(policy, rng, |r| {
        for _ in 0..GENERIC_RETRIES {
            let combos: Vec<Polynomial<F>> = (0..d).map(|_| random_combination(ring, &gens, r)).collect();
            let k = algebra.ideal_of(combos)?;
            if one_degree {
                if k.is_m_primary() {
                    return Ok(k);
                }
                continue;
            }
            // the component at the origin is K + m^N once K + m^N = K + m^{N+1}
            let mut big = top;
            let mut prev = k.sum(&Ideal::maximal_power(ring, big))?;
            for _ in 0..4 * (top + 2) {
                let next = k.sum(&Ideal::maximal_power(ring, big + 1))?;
                if next.equals(&prev)? {
                    return Ok(prev);
                }
                prev = next;
                big += 1;
            }
        }
        Err(Error::NoLinearSop)
    })
}

/// `e(Q; R/H)`, from the Hilbert-Samuel function `k ↦ λ(R/(H + Q^k))`.
pub fn samuel_multiplicity<F: Field>(algebra: &GradedAlgebra<F>, q: &Ideal<F>, h: &Ideal<F>) -> Result<i64> {
    let base = algebra.lift(h)?;
    if base.is_unit() {
        return Ok(0);
    }
    let dim = base.dimension()?;
    let lengths: Vec<i64> = (1..=(dim as i64 + 6))
        .map(|k| -> Result<i64> {
            let quotient = base.sum(&q.power(k))?;
            if quotient.is_unit() {
                return Ok(0);
            }
            let hs = quotient.hilbert_series()?;
            if hs.dim != 0 {
                return Err(Error::NotMPrimary);
            }
            Ok(hs.multiplicity())
        })
        .collect::<Result<_>>()?;
    let mut diffs = lengths;
    for _ in 0..dim {
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let tail = &diffs[diffs.len() - 3..];
    if tail.iter().any(|&x| x != tail[0]) {
        return Err(Error::SizeLimit("Hilbert-Samuel function not yet polynomial".into()));
    }
    Ok(tail[0])
}

/// Checks `L Q^e ⊆ core Q` with `e = e(Q; R/H)` for `L H = 0`. For
/// `Q = m^n` the core comes from the formula, otherwise from the oracle.
pub fn verify_local_containment<F: Field, R: Rng + ?Sized>(
    algebra: &GradedAlgebra<F>,
    l: &Ideal<F>,
    h: &Ideal<F>,
    q: &Ideal<F>,
    label: &str,
    rng: &mut R,
    policy: OraclePolicy,
    report: &mut Report,
) -> Result<()> {
    if !algebra.is_zero_ideal(&l.product(h)?)? {
        return Err(Error::Precondition("L H is not zero in R".into()));
    }
    let e = samuel_multiplicity(algebra, q, h)?;
    let lifted_q = algebra.lift(q)?;
    let power = lifted_q.initial_degree().map(|k| k as i64).filter(|&k| {
        k >= 1 && lifted_q.equals(&algebra.maximal_power(k).unwrap()).unwrap_or(false)
    });
    let core = match power {
        Some(n) => {
            let base = algebra.lift(h)?;
            let expected = n.pow(base.dimension()? as u32) * base.hilbert_series()?.multiplicity();
            report.record_with("samuel multiplicity", label, e == expected, format!("{e} = {expected}"));
            core_formula(algebra, n, rng)?.ideal
        }
        None => {
            let run = core_mprimary_oracle(algebra, q, rng, policy)?;
            if run.verdict == OracleVerdict::Inconclusive {
                report.inconclusive("local containment", label, "oracle did not stabilize");
                return Ok(());
            }
            run.ideal
        }
    };
    let lhs = algebra.lift(&l.product(&q.power(e))?)?;
    report.record_with("local containment", label, lhs.is_subset_of(&core)?, format!("e = {e}"));
    Ok(())
}

/// Structure of `core(m^n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreStructure {
    pub n: i64,
    pub lower_exponent: i64,
    pub upper_exponent: i64,
    pub sandwich: bool,
    pub decomposition: bool,
    pub height_zero: bool,
    pub equals_power: bool,
    pub generator_degrees: Vec<u32>,
}

impl<F: Field> Context<F> {
    /// `core(m^n)` from the formula with this context's `J`.
    pub fn core(&self, n: i64) -> Result<Ideal<F>> {
        let (a, d) = (self.a(), self.d());
        self.colon(n * d + a + 1, a + d)
    }

    pub fn core_structure(&self, n: i64, report: &mut Report) -> Result<CoreStructure> {
        let (a, b, d) = (self.a(), self.b(), self.d());
        let s = self.verify_colon_structure(n * d + a + 1, a + d, report)?;
        let core = self.core(n)?;
        Ok(CoreStructure {
            n,
            lower_exponent: n * d + a + 1,
            upper_exponent: n * d + b + 1,
            sandwich: s.sandwich,
            decomposition: s.decomposition,
            height_zero: s.height_zero,
            equals_power: s.equals_power,
            generator_degrees: self.algebra().generator_degrees(&core)?,
        })
    }

    /// Sandwich and decomposition of `core(m^n)` for `n ≤ powers`, the
    /// three-way equivalence for faithfulness of `[ω]_{-a} R`, and its
    /// `n = 1` form when it applies.
    pub fn verify_core_structure(&self, powers: i64, report: &mut Report) -> Result<()> {
        let (a, d) = (self.a(), self.d());
        let faithful = self.is_faithful(-a)?;
        let mut all_powers = true;
        for n in 1..=powers {
            let mut sub = Report::new();
            let s = self.core_structure(n, &mut sub)?;
            report.record("coreandK(b) sandwich", format!("n={n}"), s.sandwich);
            report.record("coreandK(a) decomposition", format!("n={n}"), s.decomposition && s.height_zero);
            all_powers &= s.equals_power;
        }
        // for n with nd + a ≥ indeg ann([ω]_{-a}R), an extra generator sits below degree nd+a+1
        let big = match self.indeg(&self.ann(-a)?)? {
            Some(l) => ((l - a + d - 1) / d).max(1) + 1,
            None => 2,
        };
        let big_core = self.core(big)?;
        let degrees = self.algebra().generator_degrees(&big_core)?;
        let one_degree = degrees.windows(2).all(|w| w[0] == w[1]);
        report.record_with(
            "core-ann",
            format!("n≤{powers}, n_big={big}"),
            faithful == all_powers && all_powers == one_degree,
            format!("faithful {faithful}, powers {all_powers}, one degree {one_degree}"),
        );
        let core1 = self.core(1)?;
        let first_one_degree = {
            let degs = self.algebra().generator_degrees(&core1)?;
            degs.windows(2).all(|w| w[0] == w[1])
        };
        let first_power = core1.equals(&self.m_power(a + d + 1)?)?;
        let applies = d == 1 || (self.facts().reduced && self.omega_truncation_is_core_times_omega()?);
        if applies {
            report.record_with(
                "indeg=a+d",
                "n=1",
                faithful == first_power && first_power == first_one_degree,
                format!("faithful {faithful}, power {first_power}, one degree {first_one_degree}"),
            );
        } else {
            report.skip("indeg=a+d", "n=1", "hypotheses not met");
        }
        Ok(())
    }

    /// `[ω]_{≥ d+1} = core(m) ω`, degreewise.
    pub fn omega_truncation_is_core_times_omega(&self) -> Result<bool> {
        let d = self.d();
        let core = self.core(1)?;
        let top = core.gens().iter().filter_map(|g| g.degree()).max().unwrap_or(0) as i64 + d + 1;
        let field = self.algebra().field();
        for deg in -self.a()..=top.max(d + 2) {
            let lhs = self.rep().ideal_times_omega(&core, deg);
            let full = self.rep().omega_piece(deg);
            let expect = if deg > d { full.space } else { crate::linalg::Subspace::zero(full.space.ambient_dim()) };
            if !crate::identities::same(field, &lhs, &expect) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::identities::Facts;
    use crate::poly::Ring;
    use crate::report::Status;

    fn algebra(n: usize, gens: &[&str]) -> GradedAlgebra<PrimeField> {
        let r = Ring::with_indexed_vars(PrimeField::default_prime(), n).unwrap();
        GradedAlgebra::new(Ideal::parse(&r, gens).unwrap()).unwrap()
    }

    fn four_points() -> GradedAlgebra<PrimeField> {
        algebra(3, &["x0*x1", "x0*(x0-x2)", "x1*(x1-x2)*(x1+x2)"])
    }

    #[test]
    fn four_point_core() {
        let alg = four_points();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let res = core_of_power(&alg, 1, CoreMethod::Both, &mut rng, OraclePolicy::default()).unwrap();
        let expected = alg.maximal_power(3).unwrap().add_gens(&[crate::parse::parse_polynomial("x0^2", alg.ring()).unwrap()]).unwrap();
        assert!(res.ideal.equals(&expected).unwrap());
        assert_eq!(res.agreement, Some(true));
        assert!(!res.equals_lower_power);
        assert!(contained_in_samples(&alg, &res.ideal, 1, 10, &mut rng).unwrap());
    }

    #[test]
    fn polynomial_rings() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let alg = algebra(2, &[]);
        let res = core_formula(&alg, 1, &mut rng).unwrap();
        assert!(res.ideal.equals(&Ideal::maximal(alg.ring())).unwrap());
        let alg = algebra(1, &[]);
        let res = core_of_power(&alg, 2, CoreMethod::Both, &mut rng, OraclePolicy::default()).unwrap();
        assert!(res.ideal.equals(&Ideal::maximal_power(alg.ring(), 2)).unwrap());
        assert_eq!(res.agreement, Some(true));
    }

    #[test]
    fn mprimary_oracle() {
        let alg = algebra(2, &[]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = Ideal::maximal(alg.ring());
        let run = core_mprimary_oracle(&alg, &m, &mut rng, OraclePolicy::default()).unwrap();
        assert_eq!(run.verdict, OracleVerdict::Stabilized);
        assert!(run.ideal.equals(&m).unwrap());
        let m2 = Ideal::maximal_power(alg.ring(), 2);
        let run = core_mprimary_oracle(&alg, &m2, &mut rng, OraclePolicy::default()).unwrap();
        assert!(Ideal::maximal_power(alg.ring(), 3).is_subset_of(&run.ideal).unwrap());
        let q = Ideal::parse(alg.ring(), &["x0^2", "x1^3"]).unwrap();
        let run = core_mprimary_oracle(&alg, &q, &mut rng, OraclePolicy::default()).unwrap();
        assert!(run.ideal.is_subset_of(&q).unwrap());
        let not_primary = Ideal::parse(alg.ring(), &["x0"]).unwrap();
        assert!(matches!(core_mprimary_oracle(&alg, &not_primary, &mut rng, OraclePolicy::default()), Err(Error::NotMPrimary)));
    }

    #[test]
    fn samuel_multiplicities() {
        let alg = four_points();
        let m = Ideal::maximal(alg.ring());
        let zero = Ideal::zero(alg.ring());
        assert_eq!(samuel_multiplicity(&alg, &m, &zero).unwrap(), 4);
        assert_eq!(samuel_multiplicity(&alg, &Ideal::maximal_power(alg.ring(), 2), &zero).unwrap(), 8);
        let z = Ideal::parse(alg.ring(), &["x1", "x0 - x2"]).unwrap();
        assert_eq!(samuel_multiplicity(&alg, &m, &z).unwrap(), 1);
    }

    #[test]
    fn local_containment_for_the_split_configuration() {
        let alg = four_points();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let l = Ideal::parse(alg.ring(), &["x0"]).unwrap();
        let h = Ideal::parse(alg.ring(), &["x1", "x0 - x2"]).unwrap();
        let mut report = Report::new();
        verify_local_containment(&alg, &l, &h, &Ideal::maximal(alg.ring()), "Z point", &mut rng, OraclePolicy::default(), &mut report).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert!(report.checks.iter().any(|c| c.claim == "local containment" && c.status == Status::Pass));
        let collinear = Ideal::parse(alg.ring(), &["x0"]).unwrap();
        let res = verify_local_containment(&alg, &l, &collinear, &Ideal::maximal(alg.ring()), "bad", &mut rng, OraclePolicy::default(), &mut report);
        assert!(matches!(res, Err(Error::Precondition(_))));
    }

    #[test]
    fn core_structure_of_four_points() {
        let ctx = Context::new(four_points(), Facts { reduced: true, domain: false }, None, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let mut report = Report::new();
        ctx.verify_core_structure(2, &mut report).unwrap();
        assert!(report.all_passed(), "{report:#?}");
        let detail = report.checks.iter().find(|c| c.claim == "core-ann").unwrap().detail.clone().unwrap();
        assert_eq!(detail, "faithful false, powers false, one degree false");
    }
}
