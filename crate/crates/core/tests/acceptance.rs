//! One test per acceptance criterion; each prints a single PASS/FAIL line.

use std::time::{Duration, Instant};

use corecalc::cores::{core_formula, core_of_power, verify_local_containment, CoreMethod, OraclePolicy};
use corecalc::corpus::{
    collinear_plus, conic_plus, grid_points, four_points, plane, random_points, split_configurations, standard_corpus,
    Example,
};
use corecalc::identities::Context;
use corecalc::points::PointSet;
use corecalc::report::{Report, Status};
use corecalc::suites::{run_suite, Input, SuiteOptions};
use corecalc::{parse_polynomial, Field, GradedAlgebra, Ideal, PrimeField, Rationals};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn line(n: u32, ok: bool, detail: impl AsRef<str>) {
    println!("criterion {n}: {} {}", if ok { "PASS" } else { "FAIL" }, detail.as_ref());
}

fn input<F: Field>(ex: &Example<F>) -> Input<F> {
    match &ex.points {
        Some(p) => Input::Points(p.clone()),
        None => Input::Ring(ex.algebra.clone()),
    }
}

fn corpus() -> Vec<Example<PrimeField>> {
    standard_corpus(PrimeField::default_prime(), &mut ChaCha8Rng::seed_from_u64(2024)).unwrap()
}

fn bad(report: &Report) -> Vec<String> {
    report
        .checks
        .iter()
        .filter(|c| matches!(c.status, Status::Fail | Status::Inconclusive))
        .map(|c| format!("{} [{}] {:?}", c.claim, c.sample, c.detail))
        .collect()
}

struct Golden {
    a: i64,
    core: Vec<String>,
    conductor_matches: bool,
    cb: bool,
    elapsed: Duration,
}

fn golden<F: Field>(field: F) -> Golden {
    let start = Instant::now();
    let ring = plane(field.clone());
    let ideal = Ideal::parse(&ring, &["x0*x1", "x0*(x0-x2)", "x1*(x1-x2)*(x1+x2)"]).unwrap();
    let alg = GradedAlgebra::new(ideal.clone()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = alg.series().a_invariant();
    let core = core_formula(&alg, 1, &mut rng).unwrap().ideal;
    let points = four_points(field);
    assert!(points.vanishing_ideal().unwrap().equals(&ideal).unwrap());
    let separators = ["x1*(x1-x2)", "(x0-x1-x2)*(x1-x2)", "x1*(x1+x2)", "x0"].map(|s| parse_polynomial(s, &ring).unwrap());
    let conductor_matches = points.conductor(&mut rng).unwrap().equals(&ideal.add_gens(&separators).unwrap()).unwrap();
    let cb = points.cayley_bacharach(&mut rng).unwrap();
    let expected = Ideal::maximal_power(&ring, 3).sum(&ideal).unwrap().add_gens(&[parse_polynomial("x0^2", &ring).unwrap()]).unwrap();
    assert!(core.equals(&expected).unwrap());
    Golden {
        a,
        core: core.canonical_strings(),
        conductor_matches,
        cb: cb.is_cb || cb.equal_separator_degrees || cb.core_is_power,
        elapsed: start.elapsed(),
    }
}

#[test]
fn criterion_1_four_point_example() {
    let mut ok = true;
    let mut detail = String::new();
    for (name, g) in [("F_32003", golden(PrimeField::default_prime())), ("Q", golden(Rationals))] {
        let this = g.a == 1 && g.conductor_matches && !g.cb && g.elapsed < Duration::from_secs(1);
        ok &= this;
        detail += &format!("[{name}: a={}, core {:?}, conductor {}, CB {}, {:?}] ", g.a, g.core, g.conductor_matches, g.cb, g.elapsed);
    }
    line(1, ok, detail);
    assert!(ok);
}

#[test]
fn criterion_2_formula_equals_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let ring = plane(PrimeField::default_prime());
    let mut agreements = 0;
    let mut failures = Vec::new();
    for k in 0..25 {
        let s = rng.gen_range(4..=8);
        let x = random_points(&ring, s, &mut rng).unwrap();
        let alg = x.algebra().unwrap();
        for n in [1, 2] {
            let res = core_of_power(&alg, n, CoreMethod::Both, &mut rng, OraclePolicy::default()).unwrap();
            if res.agreement == Some(true) {
                agreements += 1;
            } else {
                failures.push(format!("set {k} (s={s}) n={n}: {:?}", res.agreement));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < Duration::from_secs(120);
    line(2, ok, format!("{agreements}/50 agree in {elapsed:?} {failures:?}"));
    assert!(ok);
}

fn structured_configurations(rng: &mut ChaCha8Rng) -> Vec<(String, PointSet<PrimeField>)> {
    let ring = plane(PrimeField::default_prime());
    let mut out = vec![("four points".to_string(), four_points(PrimeField::default_prime()))];
    for (p, q) in [(2, 2), (2, 3), (3, 3), (2, 4)] {
        out.push((format!("grid {p}x{q}"), grid_points(&ring, p, q).unwrap()));
    }
    for (k, extra) in [(3, 1), (4, 1), (4, 2)] {
        out.push((format!("{k} collinear + {extra}"), collinear_plus(&ring, k, extra, rng).unwrap().0));
    }
    out.push(("5 collinear".into(), collinear_plus(&ring, 5, 0, rng).unwrap().0));
    out.push(("4 on a conic + 2".into(), conic_plus(&ring, 4, 2, rng).unwrap().0));
    out
}

#[test]
fn criterion_3_cayley_bacharach_triple() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let ring = plane(PrimeField::default_prime());
    let mut configs: Vec<(String, PointSet<PrimeField>)> = (0..25)
        .map(|k| {
            let s = rng.gen_range(4..=8);
            (format!("random {k} (s={s})"), random_points(&ring, s, &mut rng).unwrap())
        })
        .collect();
    configs.extend(structured_configurations(&mut rng));
    let mut failures = Vec::new();
    let mut cb_count = 0;
    for (name, x) in &configs {
        let cb = x.cayley_bacharach(&mut rng).unwrap();
        cb_count += usize::from(cb.is_cb);
        if !cb.agree {
            failures.push(format!("{name}: {cb:?}"));
        }
    }
    let ok = failures.is_empty() && configs.len() == 35;
    line(3, ok, format!("{} configurations, {cb_count} CB, three-way agreement on all but {failures:?}", configs.len()));
    assert!(ok);
}

#[test]
fn criterion_4_identity_suites() {
    let suites = ["puv22", "colon1", "thm-omega", "ann-omega", "ann-omega-dim1", "omegacontainment", "colon-structure"];
    let corpus = corpus();
    let mut failures = Vec::new();
    let mut passes = 0;
    let mut dim1 = 0;
    for ex in &corpus {
        dim1 += usize::from(ex.algebra.dim() == 1);
        let opts = SuiteOptions { seed: 4, facts: ex.facts, ..Default::default() };
        for name in suites {
            let report = run_suite(name, &input(ex), &opts).unwrap();
            passes += report.count(Status::Pass);
            failures.extend(bad(&report).into_iter().map(|b| format!("{} / {name}: {b}", ex.name)));
        }
    }
    let ok = failures.is_empty() && corpus.len() >= 10;
    line(4, ok, format!("{} examples ({dim1} with d = 1), {passes} checks passed {failures:?}", corpus.len()));
    assert!(ok);
}

#[test]
fn criterion_5_colonmax2_on_complete_intersections() {
    let mut passes = 0;
    let mut failures = Vec::new();
    let cis: Vec<Example<PrimeField>> = corpus().into_iter().filter(|e| e.complete_intersection).collect();
    for ex in &cis {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ctx = Context::new(ex.algebra.clone(), ex.facts, None, &mut rng).unwrap();
        let mut report = Report::new();
        for (i, j) in ctx.default_grid(1).into_iter().chain(ctx.default_grid(2)) {
            ctx.verify_colon_structure(i, j, &mut report).unwrap();
        }
        for c in report.checks.iter().filter(|c| c.claim == "colonmax2") {
            match c.status {
                Status::Pass => passes += 1,
                _ => failures.push(format!("{}: {c:?}", ex.name)),
            }
        }
    }
    let ok = failures.is_empty() && passes > 0 && cis.len() >= 4;
    line(5, ok, format!("{} complete intersections, {passes} grid points {failures:?}", cis.len()));
    assert!(ok);
}

#[test]
fn criterion_6_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let ring = plane(PrimeField::default_prime());
    let mut report = Report::new();
    for k in 0..20 {
        let s = rng.gen_range(4..=7);
        let x = random_points(&ring, s, &mut rng).unwrap();
        let size = rng.gen_range(1..s);
        let mut idx: Vec<usize> = (0..s).collect();
        idx.sort_by_key(|_| rng.gen::<u32>());
        idx.truncate(size);
        let h = x.subset(&idx).unwrap().vanishing_ideal().unwrap().clone();
        let ctx = Context::new(x.algebra().unwrap(), corecalc::identities::Facts { reduced: true, domain: false }, None, &mut rng).unwrap();
        let label = format!("pair {k}: s={s}, |Z|={size}");
        ctx.verify_lower_bound(&h, &label, &mut report).unwrap();
        ctx.verify_dim1_bound(&h, &label, &mut report).unwrap();
    }
    for ex in corpus() {
        let r = run_suite("bounds", &input(&ex), &SuiteOptions { seed: 6, facts: ex.facts, ..Default::default() }).unwrap();
        report.extend(r);
    }
    let failures = bad(&report);
    let lower = report.checks.iter().filter(|c| c.claim == "indeg lower bound" && c.status == Status::Pass).count();
    let ok = failures.is_empty() && lower >= 20;
    line(
        6,
        ok,
        format!("{} passed, {} skipped, {lower} lower-bound checks {failures:?}", report.count(Status::Pass), report.count(Status::Skip)),
    );
    assert!(ok);
}

#[test]
fn criterion_7_core_structure_and_local() {
    let mut report = Report::new();
    for ex in corpus() {
        for name in ["colon-structure", "core-ann"] {
            let r = run_suite(name, &input(&ex), &SuiteOptions { seed: 7, facts: ex.facts, ..Default::default() }).unwrap();
            report.extend(r);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let splits = split_configurations(PrimeField::default_prime(), &mut rng).unwrap();
    for sp in &splits {
        let x = sp.y.union(&sp.z).unwrap();
        let alg = x.algebra().unwrap();
        let l = Ideal::new(x.ring(), vec![sp.f.clone()]).unwrap();
        let q = Ideal::maximal(x.ring());
        verify_local_containment(&alg, &l, sp.z.vanishing_ideal().unwrap(), &q, &sp.name, &mut rng, OraclePolicy::default(), &mut report)
            .unwrap();
    }
    let failures = bad(&report);
    let count = |p: &str| report.checks.iter().filter(|c| c.claim.starts_with(p) && c.status == Status::Pass).count();
    let ok = failures.is_empty() && count("local containment") == 10 && splits.len() == 10;
    line(
        7,
        ok,
        format!(
            "coreandK {}, core-ann {}, local {} {failures:?}",
            count("coreandK"),
            count("core-ann"),
            count("local containment")
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_8_determinism_and_fields() {
    let corpus = corpus();
    let mut mismatches = Vec::new();
    for ex in corpus.iter().take(3) {
        for name in corecalc::suites::SUITES {
            let opts = SuiteOptions { seed: 8, facts: ex.facts, ..Default::default() };
            let first = serde_json::to_string(&run_suite(name, &input(ex), &opts).unwrap()).unwrap();
            let second = serde_json::to_string(&run_suite(name, &input(ex), &opts).unwrap()).unwrap();
            if first != second {
                mismatches.push(format!("{} / {name}", ex.name));
            }
        }
    }
    let fp = golden(PrimeField::default_prime());
    let q = golden(Rationals);
    let fields_agree = fp.a == q.a && fp.core == q.core && fp.conductor_matches == q.conductor_matches && fp.cb == q.cb;
    let cb_q = four_points(Rationals).cayley_bacharach(&mut ChaCha8Rng::seed_from_u64(8)).unwrap();
    let cb_p = four_points(PrimeField::default_prime()).cayley_bacharach(&mut ChaCha8Rng::seed_from_u64(8)).unwrap();
    let reports_agree = serde_json::to_string(&cb_q).unwrap() == serde_json::to_string(&cb_p).unwrap();
    let ok = mismatches.is_empty() && fields_agree && reports_agree;
    line(8, ok, format!("re-runs identical except {mismatches:?}; fields agree {fields_agree}, CB reports agree {reports_agree}"));
    assert!(ok);
}
