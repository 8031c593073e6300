use std::time::Instant;

use corecalc::corpus::standard_corpus;
use corecalc::report::Status;
use corecalc::suites::{run_suite, Input, SuiteOptions, SUITES};
use corecalc::PrimeField;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn every_suite_passes_on_the_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let corpus = standard_corpus(PrimeField::default_prime(), &mut rng).unwrap();
    let mut failed = Vec::new();
    for ex in &corpus {
        let input = match &ex.points {
            Some(p) => Input::Points(p.clone()),
            None => Input::Ring(ex.algebra.clone()),
        };
        let opts = SuiteOptions { seed: 5, facts: ex.facts, ..Default::default() };
        for name in SUITES {
            let start = Instant::now();
            let report = run_suite(name, &input, &opts).unwrap_or_else(|e| panic!("{} {name}: {e}", ex.name));
            eprintln!(
                "{:40} {:18} pass {:3} skip {:2} {:?}",
                ex.name,
                name,
                report.count(Status::Pass),
                report.count(Status::Skip),
                start.elapsed()
            );
            for c in report.checks.iter().filter(|c| c.status == Status::Fail || c.status == Status::Inconclusive) {
                failed.push(format!("{} / {name}: {c:?}", ex.name));
            }
        }
    }
    assert!(failed.is_empty(), "{failed:#?}");
}
