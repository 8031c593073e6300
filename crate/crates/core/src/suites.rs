//! Named verification suites. Each binds a family of identities to a
//! runnable, seeded check and returns a [`Report`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::GradedAlgebra;
use crate::cores::{core_of_power, verify_local_containment, CoreMethod, OraclePolicy};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::identities::{Context, Facts};
use crate::ideal::Ideal;
use crate::points::{verify_separators_b, verify_yz, PointSet};
use crate::poly::Polynomial;
use crate::report::Report;

pub const SUITES: [&str; 15] = [
    "puv22",
    "colon1",
    "thm-omega",
    "ann-omega",
    "ann-omega-dim1",
    "omegacontainment",
    "colon-structure",
    "core-vs-oracle",
    "core-ann",
    "indeg-a-d",
    "coreandS",
    "points-cb",
    "yz",
    "local",
    "bounds",
];

pub enum Input<F: Field> {
    Ring(GradedAlgebra<F>),
    Points(PointSet<F>),
}

impl<F: Field> Input<F> {
    pub fn algebra(&self) -> Result<GradedAlgebra<F>> {
        match self {
            Input::Ring(a) => Ok(a.clone()),
            Input::Points(p) => p.algebra(),
        }
    }

    fn points(&self) -> Option<&PointSet<F>> {
        match self {
            Input::Points(p) => Some(p),
            Input::Ring(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub cutoff: Option<i64>,
    pub facts: Facts,
    pub policy: OraclePolicy,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 0, cutoff: None, facts: Facts::default(), policy: OraclePolicy::default() }
    }
}

/// Runs the suite `name` on `input`. Inapplicable checks are reported as
/// skipped with a reason.
pub fn run_suite<F: Field>(name: &str, input: &Input<F>, opts: &SuiteOptions) -> Result<Report> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut report = Report::new();
    let algebra = input.algebra()?;
    let mut facts = opts.facts;
    if input.points().is_some() {
        facts.reduced = true;
    }
    let needs_context = !matches!(name, "core-vs-oracle" | "points-cb" | "yz" | "local");
    let ctx = if needs_context {
        match Context::new(algebra.clone(), facts, opts.cutoff, &mut rng) {
            Ok(c) => Some(c),
            Err(e @ (Error::ZeroDimensional | Error::NotCohenMacaulay)) => {
                report.skip(name, "input", e.to_string());
                return Ok(report);
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let grid = ctx.as_ref().map(full_grid).unwrap_or_default();
    match (name, ctx.as_ref()) {
        ("puv22", Some(c)) => {
            for &(i, j) in &grid {
                c.verify_puv22(i, j, &mut report)?;
            }
        }
        ("colon1", Some(c)) => {
            for &(i, j) in &grid {
                c.verify_colon1(i, j, &mut report)?;
            }
        }
        ("thm-omega", Some(c)) => {
            for &(i, j) in &grid {
                c.verify_omega_truncation(i, j, &mut report)?;
            }
            c.verify_equality_propagates(c.a() + c.d(), 3, &mut report)?;
        }
        ("ann-omega", Some(c)) => {
            for t in t_range(c) {
                c.verify_ann_formula(t, c.a() + c.d(), &mut report)?;
            }
        }
        ("ann-omega-dim1", Some(c)) => {
            if c.d() != 1 {
                report.skip("ann-omega-dim1", "input", "needs d = 1");
            } else {
                for t in t_range(c) {
                    c.verify_ann_formula_dim1(t, c.a() + 1, &mut report)?;
                }
                for &(i, j) in &grid {
                    c.verify_equality_in_dim1(i, j, &mut report)?;
                }
            }
        }
        ("omegacontainment", Some(c)) => {
            for &(i, j) in &grid {
                c.verify_omegacontainment(i, j, &mut report)?;
            }
        }
        ("colon-structure", Some(c)) => {
            for &(i, j) in &grid {
                c.verify_colon_structure(i, j, &mut report)?;
            }
            core_structure_claims(c, "coreandK", &mut report)?;
        }
        ("core-ann", Some(c)) => {
            c.verify_faithfulness(&mut report)?;
            core_structure_claims(c, "core-ann", &mut report)?;
        }
        ("indeg-a-d", Some(c)) => core_structure_claims(c, "indeg=a+d", &mut report)?,
        ("coreandS", Some(c)) => match input.points() {
            None => report.skip("coreandS", "input", "needs a point set"),
            Some(p) => {
                let conductor = p.conductor(&mut rng)?;
                for &(i, j) in &grid {
                    c.verify_colon_via_conductor(&conductor, i, j, &mut report)?;
                }
                verify_separators_b(c, &mut report)?;
            }
        },
        ("core-vs-oracle", _) => core_vs_oracle(input, &algebra, opts, &mut rng, &mut report)?,
        ("points-cb", _) => match input.points() {
            Some(p) if p.len() >= 2 => {
                let cb = p.cayley_bacharach(&mut rng)?;
                report.record_with(
                    "CB triple",
                    format!("s={}", p.len()),
                    cb.agree,
                    format!(
                        "definition {}, separator degrees {}, core = m^(a+2) {}",
                        cb.is_cb, cb.equal_separator_degrees, cb.core_is_power
                    ),
                );
                p.verify_separator_degrees(&mut report)?;
            }
            _ => report.skip("CB triple", "input", "needs at least two points"),
        },
        ("yz", _) => match input.points() {
            None => report.skip("Y and Z", "input", "needs a point set"),
            Some(p) => {
                for (label, y, z, f) in splits(p)? {
                    verify_yz(&y, &z, &f, &label, &mut rng, &mut report)?;
                }
            }
        },
        ("local", _) => match input.points() {
            None => report.skip("local containment", "input", "needs a point set"),
            Some(p) => {
                for (label, _, z, f) in splits(p)? {
                    let l = Ideal::new(p.ring(), vec![f])?;
                    let h = z.vanishing_ideal()?;
                    for n in [1, 2] {
                        let q = Ideal::maximal_power(p.ring(), n);
                        let sample = format!("{label} Q=m^{n}");
                        verify_local_containment(&algebra, &l, h, &q, &sample, &mut rng, opts.policy, &mut report)?;
                    }
                }
            }
        },
        ("bounds", Some(c)) => bounds(c, input, &mut rng, &mut report)?,
        _ => unreachable!("suite names are checked above"),
    }
    Ok(report)
}

/// The default grid for `n = 1` and `n = 2`.
fn full_grid<F: Field>(c: &Context<F>) -> Vec<(i64, i64)> {
    let mut grid = c.default_grid(1);
    for p in c.default_grid(2) {
        if !grid.contains(&p) {
            grid.push(p);
        }
    }
    grid
}

/// From the empty component below `-a` to just past the faithful range.
fn t_range<F: Field>(c: &Context<F>) -> std::ops::RangeInclusive<i64> {
    (-c.a() - 1)..=(-c.b() + 1)
}

fn core_structure_claims<F: Field>(c: &Context<F>, prefix: &str, report: &mut Report) -> Result<()> {
    let mut sub = Report::new();
    c.verify_core_structure(2, &mut sub)?;
    for check in sub.checks.into_iter().filter(|k| k.claim.starts_with(prefix)) {
        report.checks.push(check);
    }
    Ok(())
}

fn core_vs_oracle<F: Field>(
    input: &Input<F>,
    algebra: &GradedAlgebra<F>,
    opts: &SuiteOptions,
    rng: &mut ChaCha8Rng,
    report: &mut Report,
) -> Result<()> {
    for n in [1, 2] {
        let sample = format!("n={n}");
        let res = match core_of_power(algebra, n, CoreMethod::Both, rng, opts.policy) {
            Ok(r) => r,
            Err(e @ (Error::ZeroDimensional | Error::NotCohenMacaulay)) => {
                report.skip("core-vs-oracle", sample, e.to_string());
                return Ok(());
            }
            Err(e) => return Err(e),
        };
        let rounds = res.oracle.map(|(r, _)| r).unwrap_or(0);
        match res.agreement {
            Some(ok) => {
                report.record_with("core-vs-oracle", sample, ok, format!("{rounds} oracle rounds"));
            }
            None => report.inconclusive("core-vs-oracle", sample, format!("oracle did not stabilize in {rounds} rounds")),
        }
    }
    if let Some(p) = input.points() {
        let sample = format!("s={}", p.len());
        match p.core(rng, opts.policy) {
            Ok(core) => {
                report.record("core of points: y C = m C", sample.clone(), core.y_equals_m);
                match core.oracle_agrees {
                    Some(ok) => report.record("core of points: three ways", sample, ok),
                    None => {
                        report.inconclusive("core of points: three ways", sample, "oracle did not stabilize");
                        true
                    }
                };
            }
            Err(Error::Internal(msg)) => {
                report.record_with("core of points: three ways", sample, false, msg);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

/// `Z` a single point (for up to four points) and, with at least four
/// points, `Z` the last two; `f` a minimal generator of `I_Y` outside `I_X`.
fn splits<F: Field>(p: &PointSet<F>) -> Result<Vec<(String, PointSet<F>, PointSet<F>, Polynomial<F>)>> {
    let s = p.len();
    let mut zs: Vec<Vec<usize>> = (0..s.min(4)).rev().map(|i| vec![s - 1 - i]).collect();
    if s >= 4 {
        zs.push(vec![s - 2, s - 1]);
    }
    let ix = p.vanishing_ideal()?;
    let mut out = Vec::new();
    for z_idx in zs {
        if z_idx.len() >= s {
            continue;
        }
        let y_idx: Vec<usize> = (0..s).filter(|i| !z_idx.contains(i)).collect();
        let y = p.subset(&y_idx)?;
        let z = p.subset(&z_idx)?;
        let iy = y.vanishing_ideal()?;
        let mut gens = iy.minimal_generators()?;
        gens.sort_by_key(|g| g.degree());
        let mut chosen = None;
        for g in gens {
            if !ix.contains(&g)? {
                chosen = Some(g);
                break;
            }
        }
        let Some(f) = chosen else {
            continue;
        };
        out.push((format!("Z={z_idx:?}"), y, z, f));
    }
    Ok(out)
}

fn bounds<F: Field>(c: &Context<F>, input: &Input<F>, rng: &mut ChaCha8Rng, report: &mut Report) -> Result<()> {
    c.verify_invariants(report)?;
    c.verify_annihilator_bounds(report)?;
    let ring = c.algebra().ring().clone();
    match input.points() {
        Some(p) => {
            let s = p.len();
            let mut subsets: Vec<Vec<usize>> = (0..s).map(|i| vec![i]).collect();
            if s >= 3 {
                subsets.push(vec![0, 1]);
                subsets.push((0..s - 1).collect());
            }
            for z_idx in subsets {
                let label = format!("H=I_Z, Z={z_idx:?}");
                let h = p.subset(&z_idx)?.vanishing_ideal()?.clone();
                c.verify_lower_bound(&h, &label, report)?;
                c.verify_dim1_bound(&h, &label, report)?;
            }
        }
        None => {
            let mut hs: Vec<(String, Ideal<F>)> = (0..ring.nvars())
                .map(|i| Ok((format!("H=(x{i})"), Ideal::new(&ring, vec![Polynomial::var(&ring, i)])?)))
                .collect::<Result<_>>()?;
            hs.push(("H=(random linear)".into(), Ideal::new(&ring, vec![c.algebra().random_form(1, rng)])?));
            for (label, h) in hs {
                c.verify_lower_bound(&h, &label, report)?;
            }
            report.skip("dim1 indeg", "input", "hypotheses on H are only asserted for point sets");
        }
    }
    Ok(())
}
