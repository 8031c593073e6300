mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use corecalc::canonical::invariants;
use corecalc::cores::{core_of_power, CoreMethod, OraclePolicy, OracleVerdict};
use corecalc::identities::Facts;
use corecalc::points::{verify_yz, PointSet};
use corecalc::report::{Report, Status};
use corecalc::suites::{run_suite, Input, SuiteOptions, SUITES};
use corecalc::{Field, GradedAlgebra, Ideal, Polynomial, PrimeField, Rationals};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::io::{parse_input, FieldSpec, InputError, InputFile};

#[derive(Parser, Debug)]
#[command(name = "corecalc", version, about = "Cores of powers of the maximal ideal, canonical-module annihilators and Cayley-Bacharach points")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, env = "CORECALC_SEED", default_value_t = 0, global = true)]
    seed: u64,
    /// Degree cutoff for degreewise verifications (default 2(a+d)+4).
    #[arg(long, global = true)]
    cutoff: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    /// Treat the input ring as reduced.
    #[arg(long, global = true)]
    assume_reduced: bool,
    /// Treat the input ring as a domain.
    #[arg(long, global = true)]
    assume_domain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PointsAction {
    Hf,
    Separators,
    Conductor,
    Core,
    Cb,
    Yz,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension, multiplicity, a, b, c, type and related invariants.
    Invariants { file: PathBuf },
    /// The core of the n-th power of the maximal ideal.
    Core {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        power: i64,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// Computations on a finite set of points.
    Points {
        file: PathBuf,
        #[arg(value_enum)]
        action: PointsAction,
        /// Indices of the points forming Z (for `yz`; default: the last point).
        #[arg(long, value_delimiter = ',')]
        z: Vec<usize>,
        /// A form vanishing on Y (for `yz`; default: a minimal generator of I_Y).
        #[arg(long)]
        f: Option<String>,
    },
    /// Runs a named verification suite.
    Verify {
        file: PathBuf,
        #[arg(long)]
        suite: String,
    },
}

#[derive(Debug, thiserror::Error)]
enum AppError {
    #[error("{0}")]
    Input(#[from] InputError),
    #[error("cannot read {0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("{0}")]
    Usage(String),
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Input(InputError::Algebra(corecalc::Error::Internal(_))) => 1,
            _ => 2,
        }
    }
}

impl From<corecalc::Error> for AppError {
    fn from(e: corecalc::Error) -> Self {
        AppError::Input(InputError::Algebra(e))
    }
}

/// A rendered result with its exit code.
struct Outcome {
    value: Value,
    plain: Option<String>,
    code: u8,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, plain: None, code: 0 }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

fn strings<F: Field>(polys: &[Polynomial<F>]) -> Vec<String> {
    polys.iter().map(|p| p.to_string()).collect()
}

fn report_outcome(report: &Report) -> Outcome {
    let code = match report.status() {
        Status::Fail => 1,
        Status::Inconclusive => 3,
        _ => 0,
    };
    let mut plain = String::new();
    for c in &report.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        plain += &format!("{tag} {} [{}]", c.claim, c.sample);
        if let Some(d) = &c.detail {
            plain += &format!(" ({d})");
        }
        plain.push('\n');
    }
    plain += &format!(
        "{} passed, {} failed, {} skipped, {} inconclusive",
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Skip),
        report.count(Status::Inconclusive)
    );
    Outcome { value: to_value(report), plain: Some(plain), code }
}

fn algebra_of<F: Field>(file: &InputFile, field: F) -> Result<(GradedAlgebra<F>, Option<PointSet<F>>), AppError> {
    match file {
        InputFile::Ring(r) => Ok((GradedAlgebra::new(r.ideal(field)?)?, None)),
        InputFile::Points(p) => {
            let ring = p.ring(field)?;
            let points = p.point_set(&ring)?;
            Ok((points.algebra()?, Some(points)))
        }
    }
}

fn require_points<F: Field>(points: Option<PointSet<F>>) -> Result<PointSet<F>, AppError> {
    points.ok_or_else(|| AppError::Usage("the `points` command needs a points file".into()))
}

fn run<F: Field>(cli: &Cli, file: &InputFile, field: F) -> Result<Outcome, AppError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let policy = OraclePolicy::default();
    match &cli.command {
        Command::Invariants { .. } => {
            let (alg, _) = algebra_of(file, field)?;
            let (report, _) = invariants(&alg, &mut rng)?;
            Ok(Outcome::ok(to_value(&report)))
        }
        Command::Core { power, method, .. } => {
            let (alg, _) = algebra_of(file, field)?;
            let method = match method {
                Method::Formula => CoreMethod::Formula,
                Method::Oracle => CoreMethod::Oracle,
                Method::Both => CoreMethod::Both,
            };
            let res = core_of_power(&alg, *power, method, &mut rng, policy)?;
            let verdict = res.oracle.map(|(_, v)| v);
            let code = match (res.agreement, verdict) {
                (Some(false), _) => 1,
                (_, Some(OracleVerdict::Inconclusive)) => 3,
                _ => 0,
            };
            let value = json!({
                "n": res.n,
                "method": res.method,
                "core": res.ideal.canonical_strings(),
                "generator_degrees": alg.generator_degrees(&res.ideal)?,
                "reduction": strings(&res.reduction),
                "agreement": res.agreement,
                "oracle_rounds": res.oracle.map(|(r, _)| r),
                "oracle_verdict": verdict,
                "lower_exponent": res.lower_exponent,
                "equals_lower_power": res.equals_lower_power,
            });
            Ok(Outcome { value, plain: None, code })
        }
        Command::Points { action, z, f, .. } => {
            let (alg, points) = algebra_of(file, field)?;
            let x = require_points(points)?;
            points_command(&x, &alg, *action, z, f.as_deref(), &mut rng, policy)
        }
        Command::Verify { suite, .. } => {
            let (alg, points) = algebra_of(file, field)?;
            let input = match points {
                Some(p) => Input::Points(p),
                None => Input::Ring(alg),
            };
            let opts = SuiteOptions {
                seed: cli.seed,
                cutoff: cli.cutoff,
                facts: Facts { reduced: cli.assume_reduced, domain: cli.assume_domain },
                policy,
            };
            Ok(report_outcome(&run_suite(suite, &input, &opts)?))
        }
    }
}

fn points_command<F: Field>(
    x: &PointSet<F>,
    alg: &GradedAlgebra<F>,
    action: PointsAction,
    z: &[usize],
    f: Option<&str>,
    rng: &mut ChaCha8Rng,
    policy: OraclePolicy,
) -> Result<Outcome, AppError> {
    let s = x.len() as i64;
    match action {
        PointsAction::Hf => {
            let values: Vec<usize> = (0..=s).map(|d| x.hilbert_function_by_evaluation(d)).collect();
            Ok(Outcome::ok(json!({
                "points": s,
                "hilbert_function": values,
                "a": x.a_invariant()?,
                "ideal": x.vanishing_ideal()?.canonical_strings(),
            })))
        }
        PointsAction::Separators => {
            let seps = x.minimal_separators::<ChaCha8Rng>(None)?;
            Ok(Outcome::ok(json!({ "degrees": x.separator_degrees(), "separators": strings(&seps) })))
        }
        PointsAction::Conductor => {
            let c = x.conductor(rng)?;
            Ok(Outcome::ok(json!({ "a": x.a_invariant()?, "conductor": c.canonical_strings() })))
        }
        PointsAction::Core => {
            let core = x.core(rng, policy)?;
            let code = if core.oracle_agrees.is_none() { 3 } else { 0 };
            let value = json!({
                "core": core.core.canonical_strings(),
                "generator_degrees": alg.generator_degrees(&core.core)?,
                "conductor": core.conductor.canonical_strings(),
                "y_conductor_equals_m_conductor": core.y_equals_m,
                "oracle_agrees": core.oracle_agrees,
                "oracle_rounds": core.oracle_rounds,
            });
            Ok(Outcome { value, plain: None, code })
        }
        PointsAction::Cb => Ok(Outcome::ok(to_value(&x.cayley_bacharach(rng)?))),
        PointsAction::Yz => {
            let z_idx: Vec<usize> = if z.is_empty() { vec![x.len().saturating_sub(1)] } else { z.to_vec() };
            if let Some(&bad) = z_idx.iter().find(|&&i| i >= x.len()) {
                return Err(AppError::Usage(format!("point index {bad} out of range")));
            }
            let y_idx: Vec<usize> = (0..x.len()).filter(|i| !z_idx.contains(i)).collect();
            let (y, zs) = (x.subset(&y_idx)?, x.subset(&z_idx)?);
            let f = match f {
                Some(text) => corecalc::parse_polynomial(text, x.ring())?,
                None => default_form(&y, x.vanishing_ideal()?)?,
            };
            let mut report = Report::new();
            verify_yz(&y, &zs, &f, &format!("Z={z_idx:?} f={f}"), rng, &mut report)?;
            Ok(report_outcome(&report))
        }
    }
}

/// A minimal generator of `I_Y` of least degree that is nonzero in `R`.
fn default_form<F: Field>(y: &PointSet<F>, ix: &Ideal<F>) -> Result<Polynomial<F>, AppError> {
    let mut gens = y.vanishing_ideal()?.minimal_generators()?;
    gens.sort_by_key(|g| g.degree());
    for g in gens {
        if !ix.contains(&g)? {
            return Ok(g);
        }
    }
    Err(AppError::Usage("no form vanishes on Y without vanishing on Z".into()))
}

fn render(value: &Value) -> String {
    let Value::Object(map) = value else { return value.to_string() };
    map.iter()
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}: {s}"),
            Value::Array(items) if items.iter().all(Value::is_string) => {
                let parts: Vec<&str> = items.iter().filter_map(Value::as_str).collect();
                format!("{k}: [{}]", parts.join(", "))
            }
            _ => format!("{k}: {v}"),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn execute(cli: &Cli) -> Result<Outcome, AppError> {
    if let Command::Verify { suite, .. } = &cli.command {
        if !SUITES.contains(&suite.as_str()) {
            return Err(AppError::Usage(format!("unknown suite `{suite}`; expected one of {}", SUITES.join(", "))));
        }
    }
    let path = match &cli.command {
        Command::Invariants { file } | Command::Core { file, .. } | Command::Points { file, .. } | Command::Verify { file, .. } => file,
    };
    let text = std::fs::read_to_string(path).map_err(|e| AppError::Io(path.clone(), e))?;
    let file = parse_input(&text)?;
    if cli.assume_reduced {
        eprintln!("note: assuming the input ring is reduced");
    }
    if cli.assume_domain {
        eprintln!("note: assuming the input ring is a domain");
    }
    match file.field() {
        FieldSpec::Rationals => run(cli, &file, Rationals),
        FieldSpec::Prime(p) => run(cli, &file, PrimeField::new(p).map_err(InputError::from)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.value).expect("json")),
                Format::Plain => println!("{}", out.plain.unwrap_or_else(|| render(&out.value))),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
