//! Command-line front end: compute invariants of polytopes from JSON
//! files, run the verification suites, and emit canonical decompositions.
//!
//! Exit codes: 0 success, 1 suite failure, 2 parse error, 3 validation
//! error, 4 incompatible invariant / unknown name.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use latval::ehrhart;
use latval::error::Error;
use latval::jsonio;
use latval::operators;
use latval::polytope::Polytope;
use latval::rational::parse_rational;
use latval::suites;

#[derive(Parser)]
#[command(
    name = "latval",
    version,
    about = "Exact lattice-polytope invariants, Minkowski valuation operators, decompositions, and verification suites"
)]
struct Cli {
    /// Write the JSON result to this path instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Seed for all randomized suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an invariant of a polytope read from a JSON file
    Compute {
        /// Polytope JSON file: {"dim": n, "vertices": [["0","1"], ...]}
        #[arg(long, value_name = "FILE")]
        input: PathBuf,

        /// One of: count, moment, ehrhart, moment-expansion, dst,
        /// difference-body, z-ab, projection-body, contra-z-ab-2d,
        /// centroid, facet-system
        #[arg(long, conflicts_with = "operator")]
        invariant: Option<String>,

        /// Apply an operator document instead of a named invariant:
        /// inline JSON like {"kind":"z_ab","a":"2","b":"2"} or @path
        #[arg(long)]
        operator: Option<String>,

        /// Operator parameter a as "p/q"
        #[arg(long)]
        a: Option<String>,

        /// Operator parameter b as "p/q"
        #[arg(long)]
        b: Option<String>,

        /// Operator parameter c as "p/q"
        #[arg(long)]
        c: Option<String>,
    },

    /// Run verification suites; exit code 0 iff all selected suites pass
    Verify {
        /// Suite name or "all"
        #[arg(long, default_value = "all")]
        suite: String,

        /// Ambient dimension
        #[arg(long, default_value_t = 2)]
        dim: usize,

        /// Trials per suite (default depends on the dimension)
        #[arg(long)]
        trials: Option<usize>,
    },

    /// Emit a canonical decomposition or split as JSON
    Decomp {
        /// One of: corner, prism, cube, grid
        name: String,

        /// Ambient dimension
        #[arg(long, default_value_t = 2)]
        dim: usize,

        /// Dilation factor for the grid decomposition
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

const EXIT_SUITE_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_INCOMPATIBLE: u8 = 4;

struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) => EXIT_PARSE,
            Error::Input(_) | Error::Dimension(_) => EXIT_INCOMPATIBLE,
            _ => EXIT_VALIDATION,
        };
        Failure(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let (value, code) = match &cli.command {
        Command::Compute {
            input,
            invariant,
            operator,
            a,
            b,
            c,
        } => match (invariant, operator) {
            (Some(inv), None) => (
                compute(input, inv, a.as_deref(), b.as_deref(), c.as_deref())?,
                0,
            ),
            (None, Some(op)) => (apply_operator(input, op)?, 0),
            _ => {
                return Err(Failure(
                    EXIT_INCOMPATIBLE,
                    "compute needs exactly one of --invariant or --operator".into(),
                ))
            }
        },
        Command::Verify { suite, dim, trials } => verify(suite, *dim, cli.seed, *trials)?,
        Command::Decomp { name, dim, k } => (decomp(name, *dim, *k)?, 0),
    };
    emit(&cli.json, &value)?;
    Ok(code)
}

fn emit(path: &Option<PathBuf>, value: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    match path {
        Some(p) => fs::write(p, text + "\n")
            .map_err(|e| Failure(EXIT_VALIDATION, format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn load_polytope(path: &PathBuf) -> Result<Polytope, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure(EXIT_PARSE, format!("invalid JSON in {}: {e}", path.display())))?;
    jsonio::polytope_from_json(&value).map_err(|e| match e {
        Error::Parse(m) => Failure(EXIT_PARSE, m),
        other => Failure(EXIT_VALIDATION, other.to_string()),
    })
}

fn need_param(name: &str, value: &Option<&str>) -> Result<latval::Rational, Failure> {
    let s = value.ok_or_else(|| {
        Failure(
            EXIT_INCOMPATIBLE,
            format!("this invariant requires --{name} <p/q>"),
        )
    })?;
    parse_rational(s).map_err(|e| Failure(EXIT_PARSE, e.to_string()))
}

fn compute(
    input: &PathBuf,
    invariant: &str,
    a: Option<&str>,
    b: Option<&str>,
    c: Option<&str>,
) -> Result<Value, Failure> {
    let p = load_polytope(input)?;
    let value = match invariant {
        "count" => json!({ "count": ehrhart::count(&p).to_string() }),
        "moment" => json!({ "moment": jsonio::intvec_to_json(&ehrhart::discrete_moment(&p)) }),
        "ehrhart" => jsonio::ehrhart_to_json(&ehrhart::ehrhart(&p).map_err(Failure::from)?),
        "moment-expansion" => {
            jsonio::moment_to_json(&ehrhart::moment_expansion(&p).map_err(Failure::from)?)
        }
        "dst" => {
            let s = ehrhart::discrete_steiner(&p).map_err(Failure::from)?;
            json!({ "dst": jsonio::ratvec_to_json(&s) })
        }
        "difference-body" => jsonio::polytope_to_json(&operators::difference_body(&p)),
        "z-ab" => {
            let (a, b) = (need_param("a", &a)?, need_param("b", &b)?);
            jsonio::polytope_to_json(&operators::z_ab(&p, &a, &b).map_err(Failure::from)?)
        }
        "projection-body" => {
            let body = operators::projection_body(&p).map_err(Failure::from)?;
            let scaled = match c {
                Some(s) => {
                    let c = parse_rational(s).map_err(|e| Failure(EXIT_PARSE, e.to_string()))?;
                    body.scale(&c)
                }
                None => body,
            };
            jsonio::polytope_to_json(&scaled)
        }
        "contra-z-ab-2d" => {
            let (a, b) = (need_param("a", &a)?, need_param("b", &b)?);
            jsonio::polytope_to_json(
                &operators::contra_z_ab_2d(&p, &a, &b).map_err(Failure::from)?,
            )
        }
        "centroid" => json!({ "centroid": jsonio::ratvec_to_json(&p.centroid()) }),
        "facet-system" => jsonio::halfspace_to_json(&p.facet_system()),
        other => {
            return Err(Failure(
                EXIT_INCOMPATIBLE,
                format!("unknown invariant {other:?}"),
            ))
        }
    };
    Ok(value)
}

/// Applies an operator document (inline JSON or @path) to the polytope.
fn apply_operator(input: &PathBuf, spec: &str) -> Result<Value, Failure> {
    use latval::operators::MinkowskiOperator;
    let p = load_polytope(input)?;
    let text = match spec.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure(EXIT_PARSE, format!("cannot read {path}: {e}")))?,
        None => spec.to_string(),
    };
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| Failure(EXIT_PARSE, format!("invalid operator JSON: {e}")))?;
    let op = jsonio::operator_from_json(&doc).map_err(Failure::from)?;
    Ok(jsonio::polytope_to_json(&op.apply(&p).map_err(Failure::from)?))
}

fn verify(
    suite: &str,
    dim: usize,
    seed: u64,
    trials: Option<usize>,
) -> Result<(Value, u8), Failure> {
    let trials = trials.unwrap_or_else(|| suites::default_trials(dim));
    let reports = suites::run_named_suite(suite, dim, seed, trials).map_err(Failure::from)?;
    let all_passed = reports.iter().all(|r| r.passed());
    for r in &reports {
        eprintln!(
            "{} dim={} trials={} {} ({} ms)",
            r.suite,
            r.dimension,
            r.trials,
            if r.passed() { "PASS" } else { "FAIL" },
            r.elapsed_ms
        );
    }
    let value = json!({
        "passed": all_passed,
        "seed": seed,
        "reports": Value::Array(reports.iter().map(|r| r.to_json()).collect()),
    });
    Ok((value, if all_passed { 0 } else { EXIT_SUITE_FAILURE }))
}

fn decomp(name: &str, dim: usize, k: usize) -> Result<Value, Failure> {
    let value = match name {
        "corner" => {
            jsonio::quadruple_to_json(&latval::decomp::corner_split(dim).map_err(Failure::from)?)
        }
        "prism" => jsonio::decomposition_to_json(
            &latval::decomp::prism_triangulation(dim).map_err(Failure::from)?,
        ),
        "cube" => jsonio::decomposition_to_json(
            &latval::decomp::cube_triangulation(dim).map_err(Failure::from)?,
        ),
        "grid" => jsonio::decomposition_to_json(
            &latval::decomp::grid_decomposition(dim, k).map_err(Failure::from)?,
        ),
        other => {
            return Err(Failure(
                EXIT_INCOMPATIBLE,
                format!("unknown decomposition {other:?}"),
            ))
        }
    };
    Ok(value)
}
