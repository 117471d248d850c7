//! Argument parsing, dispatch and JSON rendering for the `orbitquad` binary.
//!
//! Every run prints one JSON document: `schema_version`, the parsed `spec`
//! and the `result`. Runs stopped by a guardrail print `"result": null` and a
//! `cap` record instead. Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | consistent result |
//! | 1 | internal error |
//! | 2 | malformed arguments or literals |
//! | 3 | vector length does not match the module |
//! | 4 | unsupported algebra, module or parameters |
//! | 5 | discrepancy |
//! | 6 | inconclusive, or a cap was hit |

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use orbitquad::apps::{self, AppError, ChordalSpec};
use orbitquad::lie::{make_sl, LieError};
use orbitquad::linalg::{self, format_vector, LinalgError, Scalar};
use orbitquad::orbit::{self, Caps, OrbitContext, OrbitError, Verdict, DEFAULT_MAX_BOX};
use orbitquad::rep::{self, derived_rep, Derived, Rep, RepError, RepExprError};
use orbitquad::Exec;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;
pub const MAX_BOX_ENV: &str = "ORBITQUAD_MAX_BOX";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DIMENSION: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;
pub const EXIT_DISCREPANCY: i32 = 5;
pub const EXIT_INCONCLUSIVE: i32 = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

#[derive(Parser, Debug)]
#[command(
    name = "orbitquad",
    version,
    about = "Exact quadric ideals of orbit closures in sl(n) representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Isotypic decomposition of a module.
    Decompose {
        #[command(flatten)]
        target: TargetArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Quadrics vanishing on the orbit of y.
    Ideal {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Randomized certification run for the orbit of y.
    Certify {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Quadrics through the chordal variety of a Grassmannian.
    Chordal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Components of a union of orbit closures, by isotypic support.
    Components {
        #[command(flatten)]
        target: TargetArgs,
        /// Points separated by `;`, entries by `,`.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug)]
struct TargetArgs {
    /// Algebra, as `sl:<n>`.
    #[arg(long)]
    alg: String,
    /// Module expression over `std`, e.g. `sym(3,std)`.
    #[arg(long)]
    rep: String,
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// An algebra and a module expression, validated by building the module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Target {
    pub algebra: String,
    pub n: usize,
    pub rep: String,
    pub dim: usize,
}

impl Target {
    pub fn build(&self) -> Result<Rep, CliError> {
        build_rep(self.n, &self.rep)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Command {
    Decompose {
        #[serde(flatten)]
        target: Target,
    },
    Ideal {
        #[serde(flatten)]
        target: Target,
        #[serde(with = "linalg::serde_scalar::vec")]
        y: Vec<Scalar>,
    },
    Certify {
        #[serde(flatten)]
        target: Target,
        #[serde(with = "linalg::serde_scalar::vec")]
        y: Vec<Scalar>,
        seed: u64,
        trials: usize,
        max_box: usize,
    },
    Chordal {
        n: usize,
        k: usize,
        p: usize,
        samples: usize,
        seed: u64,
    },
    Components {
        #[serde(flatten)]
        target: Target,
        #[serde(with = "linalg::serde_scalar::vec2")]
        points: Vec<Vec<Scalar>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunSpec {
    #[serde(flatten)]
    pub command: Command,
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

/// A rendered report and the exit code it calls for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub document: String,
    pub exit_code: i32,
}

fn parse_algebra(text: &str) -> Result<usize, CliError> {
    let Some((family, rank)) = text.split_once(':') else {
        return Err(CliError::new(
            EXIT_PARSE,
            format!("algebra {text:?} is not of the form sl:<n>"),
        ));
    };
    let n: usize = rank
        .trim()
        .parse()
        .map_err(|_| CliError::new(EXIT_PARSE, format!("bad rank in algebra {text:?}")))?;
    if family.trim() != "sl" {
        return Err(CliError::new(
            EXIT_UNSUPPORTED,
            format!("only sl:<n> is supported, got {text:?}"),
        ));
    }
    if n < 2 {
        return Err(CliError::new(
            EXIT_UNSUPPORTED,
            LieError::RankTooSmall(n).to_string(),
        ));
    }
    Ok(n)
}

fn build_rep(n: usize, expr: &str) -> Result<Rep, CliError> {
    let parsed = rep::parse_rep_expr(expr).map_err(|e| match e {
        RepExprError::Unknown(_) => CliError::new(EXIT_UNSUPPORTED, e.to_string()),
        _ => CliError::new(EXIT_PARSE, e.to_string()),
    })?;
    let g = Arc::new(make_sl(n).map_err(|e| CliError::new(EXIT_UNSUPPORTED, e.to_string()))?);
    parsed.build(&g).map_err(rep_error)
}

fn parse_target(args: &TargetArgs) -> Result<(Target, Rep), CliError> {
    let n = parse_algebra(&args.alg)?;
    let r = build_rep(n, &args.rep)?;
    let target = Target {
        algebra: format!("sl:{n}"),
        n,
        rep: args.rep.clone(),
        dim: r.dim(),
    };
    Ok((target, r))
}

fn parse_vector_for(text: &str, dim: usize, what: &str) -> Result<Vec<Scalar>, CliError> {
    let v = linalg::parse_vector(text)
        .map_err(|e| CliError::new(EXIT_PARSE, format!("--{what}: {e}")))?;
    if v.len() != dim {
        return Err(CliError::new(
            EXIT_DIMENSION,
            format!(
                "--{what} has {} entries, the module has dimension {dim}",
                v.len()
            ),
        ));
    }
    Ok(v)
}

fn max_box_from_env() -> Result<usize, CliError> {
    match std::env::var(MAX_BOX_ENV) {
        Ok(text) => text.trim().parse().map_err(|_| {
            CliError::new(EXIT_PARSE, format!("{MAX_BOX_ENV}={text:?} is not a count"))
        }),
        Err(_) => Ok(DEFAULT_MAX_BOX),
    }
}

/// Parses `argv` (program name first) and validates every literal against
/// the module it refers to. The box cap comes from `ORBITQUAD_MAX_BOX`.
pub fn parse_spec<I, T>(argv: I) -> Result<RunSpec, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        CliError::new(code, e.render().to_string())
    })?;
    let (command, output) = match cli.command {
        Cmd::Decompose { target, out } => {
            let (target, _) = parse_target(&target)?;
            (Command::Decompose { target }, out.output)
        }
        Cmd::Ideal { target, y, out } => {
            let (target, _) = parse_target(&target)?;
            let y = parse_vector_for(&y, target.dim, "y")?;
            (Command::Ideal { target, y }, out.output)
        }
        Cmd::Certify {
            target,
            y,
            seed,
            trials,
            out,
        } => {
            let (target, _) = parse_target(&target)?;
            let y = parse_vector_for(&y, target.dim, "y")?;
            let max_box = max_box_from_env()?;
            (
                Command::Certify {
                    target,
                    y,
                    seed,
                    trials,
                    max_box,
                },
                out.output,
            )
        }
        Cmd::Chordal {
            n,
            k,
            p,
            samples,
            seed,
            out,
        } => {
            ChordalSpec::new(n, k, p).map_err(app_error)?;
            (
                Command::Chordal {
                    n,
                    k,
                    p,
                    samples,
                    seed,
                },
                out.output,
            )
        }
        Cmd::Components {
            target,
            points,
            out,
        } => {
            let (target, _) = parse_target(&target)?;
            let points = points
                .split(';')
                .map(|p| parse_vector_for(p, target.dim, "points"))
                .collect::<Result<Vec<_>, _>>()?;
            (Command::Components { target, points }, out.output)
        }
    };
    Ok(RunSpec { command, output })
}

fn linalg_error(e: LinalgError) -> CliError {
    match e {
        LinalgError::DimensionMismatch { .. } => CliError::new(EXIT_DIMENSION, e.to_string()),
        LinalgError::BadRational(_) => CliError::new(EXIT_PARSE, e.to_string()),
        LinalgError::RaggedRows { .. } => CliError::new(EXIT_INTERNAL, e.to_string()),
    }
}

fn rep_error(e: RepError) -> CliError {
    match e {
        RepError::Linalg(e) => linalg_error(e),
        RepError::DegreeOutOfRange { .. }
        | RepError::NotDiagonalizable
        | RepError::NotNilpotent(_)
        | RepError::Lie(_) => CliError::new(EXIT_UNSUPPORTED, e.to_string()),
        _ => CliError::new(EXIT_INTERNAL, e.to_string()),
    }
}

fn orbit_error(e: OrbitError) -> CliError {
    match e {
        OrbitError::Rep(e) => rep_error(e),
        OrbitError::Linalg(e) => linalg_error(e),
        OrbitError::ZeroVector => CliError::new(EXIT_UNSUPPORTED, e.to_string()),
        OrbitError::Inconsistent(_) => CliError::new(EXIT_DISCREPANCY, e.to_string()),
        e if e.is_cap() => CliError::new(EXIT_INCONCLUSIVE, e.to_string()),
        e => CliError::new(EXIT_INTERNAL, e.to_string()),
    }
}

fn app_error(e: AppError) -> CliError {
    match e {
        AppError::Rep(e) => rep_error(e),
        AppError::Linalg(e) => linalg_error(e),
        AppError::Orbit(e) => orbit_error(e),
        AppError::NotStabilized { .. } | AppError::ResampleCap(_) | AppError::RetryCap { .. } => {
            CliError::new(EXIT_INCONCLUSIVE, e.to_string())
        }
        AppError::SupportMismatch { .. } => CliError::new(EXIT_DISCREPANCY, e.to_string()),
        AppError::ZeroPoint(_)
        | AppError::NotMultiplicityFree
        | AppError::InvalidSpec(_)
        | AppError::TooLarge(_)
        | AppError::EmptyGroundSet => CliError::new(EXIT_UNSUPPORTED, e.to_string()),
        e => CliError::new(EXIT_INTERNAL, e.to_string()),
    }
}

fn render(spec: &RunSpec, result: Value, cap: Option<Value>) -> Result<String, CliError> {
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "spec": spec,
        "result": result,
    });
    if let Some(cap) = cap {
        doc["cap"] = cap;
    }
    let mut text = serde_json::to_string_pretty(&doc)
        .map_err(|e| CliError::new(EXIT_INTERNAL, e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::new(EXIT_INTERNAL, e.to_string()))
}

fn coordinate_rows(s: &linalg::Subspace) -> Vec<Vec<String>> {
    s.basis_rows().map(format_vector).collect()
}

fn decompose(target: &Target) -> Result<Value, CliError> {
    let r = target.build()?;
    let iso = rep::isotypic_decomposition(&r).map_err(rep_error)?;
    Ok(json!({
        "dim": r.dim(),
        "dims": iso.dims(),
        "multiplicity_free": iso.multiplicity_free,
        "components": to_value(&iso.components)?,
    }))
}

fn ideal(target: &Target, y: &[Scalar]) -> Result<Value, CliError> {
    let r = target.build()?;
    let ctx = OrbitContext::new(&r, y).map_err(orbit_error)?;
    let ideal = ctx.quadric_ideal();
    Ok(json!({
        "sym2_dim": rep::sym_dim(r.dim()),
        "orbit_module_dim": ctx.module().dim(),
        "ideal_dim": ideal.dim(),
        "quadrics": coordinate_rows(&ideal.coords),
    }))
}

fn chordal(spec: &ChordalSpec, samples: usize, seed: u64) -> Result<Value, CliError> {
    let report = apps::chordal_ideal(spec, samples, seed).map_err(app_error)?;
    let mut value = to_value(&report)?;
    value["quadrics"] = to_value(&coordinate_rows(&report.ideal.coords))?;
    Ok(value)
}

fn components(target: &Target, points: &[Vec<Scalar>]) -> Result<(Value, bool), CliError> {
    let r = target.build()?;
    let sym2 = derived_rep(&r, Derived::Sym2).map_err(rep_error)?;
    let iso = rep::isotypic_decomposition(&sym2).map_err(rep_error)?;
    let report = apps::component_analysis(&iso, points).map_err(app_error)?;
    let ok = report.within_bound;
    Ok((
        json!({
            "sym2_dims": iso.dims(),
            "report": to_value(&report)?,
        }),
        ok,
    ))
}

fn cap_record(e: &CliError) -> Value {
    json!({ "exit_code": e.code, "message": e.message })
}

/// Runs a parsed spec. Guardrail stops come back as a report with exit code
/// 6; other failures are errors.
pub fn run(spec: &RunSpec) -> Result<Report, CliError> {
    let (result, exit_code) = match &spec.command {
        Command::Decompose { target } => (decompose(target)?, EXIT_OK),
        Command::Ideal { target, y } => (ideal(target, y)?, EXIT_OK),
        Command::Certify {
            target,
            y,
            seed,
            trials,
            max_box,
        } => {
            let r = target.build()?;
            let caps = Caps {
                max_box: *max_box,
                ..Caps::default()
            };
            let outcome = OrbitContext::with_options(&r, y, caps, Exec::default())
                .and_then(|ctx| orbit::certify_with(ctx, *trials, *seed));
            match outcome {
                Ok(report) => {
                    let code = match report.verdict {
                        Verdict::Consistent => EXIT_OK,
                        Verdict::Discrepancy => EXIT_DISCREPANCY,
                        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
                    };
                    (to_value(&report)?, code)
                }
                Err(e) if e.is_cap() => {
                    let err = orbit_error(e);
                    return Ok(Report {
                        document: render(spec, Value::Null, Some(cap_record(&err)))?,
                        exit_code: err.code,
                    });
                }
                Err(e) => return Err(orbit_error(e)),
            }
        }
        Command::Chordal {
            n,
            k,
            p,
            samples,
            seed,
        } => {
            let cs = ChordalSpec::new(*n, *k, *p).map_err(app_error)?;
            match chordal(&cs, *samples, *seed) {
                Ok(value) => {
                    let code = if value["matched_tail"].is_null() {
                        EXIT_DISCREPANCY
                    } else {
                        EXIT_OK
                    };
                    (value, code)
                }
                Err(e) if e.code == EXIT_INCONCLUSIVE => {
                    return Ok(Report {
                        document: render(spec, Value::Null, Some(cap_record(&e)))?,
                        exit_code: e.code,
                    });
                }
                Err(e) => return Err(e),
            }
        }
        Command::Components { target, points } => {
            let (value, ok) = components(target, points)?;
            (value, if ok { EXIT_OK } else { EXIT_DISCREPANCY })
        }
    };
    Ok(Report {
        document: render(spec, result, None)?,
        exit_code,
    })
}

/// Full command-line behavior: parse, run, write the report, and return the
/// process exit code. Errors go to stderr.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let spec = match parse_spec(argv) {
        Ok(spec) => spec,
        Err(e) if e.code == EXIT_OK => {
            print!("{}", e.message);
            return EXIT_OK;
        }
        Err(e) => {
            eprintln!("{}", e.message.trim_end());
            return e.code;
        }
    };
    let report = match run(&spec) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return e.code;
        }
    };
    match &spec.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &report.document) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_INTERNAL;
            }
        }
        None => print!("{}", report.document),
    }
    report.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbitquad::linalg::{ints, ratio};

    fn argv(line: &str) -> Vec<String> {
        std::iter::once("orbitquad".to_string())
            .chain(line.split_whitespace().map(String::from))
            .collect()
    }

    fn code(line: &str) -> i32 {
        parse_spec(argv(line)).unwrap_err().code
    }

    #[test]
    fn certify_grammar() {
        let spec = parse_spec(argv(
            "certify --alg sl:2 --rep sym(3,std) --y 1,0,0,0 --seed 7",
        ))
        .unwrap();
        let Command::Certify {
            target,
            y,
            seed,
            trials,
            ..
        } = spec.command
        else {
            panic!("wrong command");
        };
        assert_eq!(target.n, 2);
        assert_eq!(target.dim, 4);
        assert_eq!(y, ints(&[1, 0, 0, 0]));
        assert_eq!((seed, trials), (7, 25));
    }

    #[test]
    fn rational_literals() {
        let spec = parse_spec(argv("ideal --alg sl:3 --rep std --y 1,0,3/2")).unwrap();
        let Command::Ideal { y, .. } = spec.command else {
            panic!("wrong command");
        };
        assert_eq!(y[2], ratio(3, 2));
        let spec = parse_spec(argv("ideal --alg sl:3 --rep std --y -1,0,0")).unwrap();
        assert!(matches!(spec.command, Command::Ideal { .. }));
    }

    #[test]
    fn chordal_grammar() {
        let spec = parse_spec(argv("chordal --n 4 --k 2 --p 1")).unwrap();
        assert_eq!(
            spec.command,
            Command::Chordal {
                n: 4,
                k: 2,
                p: 1,
                samples: 3,
                seed: 0
            }
        );
    }

    #[test]
    fn exit_codes_for_bad_input() {
        assert_eq!(
            code("certify --alg sl:2 --rep sym(3,std) --y 1,0"),
            EXIT_DIMENSION
        );
        assert_eq!(
            code("certify --alg sl:2 --rep sym(3,std) --y 1,x,0,0"),
            EXIT_PARSE
        );
        assert_eq!(
            code("certify --alg sl:2 --rep sym(3,std) --y 1/0,0,0,0"),
            EXIT_PARSE
        );
        assert_eq!(
            code("decompose --alg sl:2 --rep foo(std)"),
            EXIT_UNSUPPORTED
        );
        assert_eq!(code("decompose --alg sl:2 --rep sym(3,std"), EXIT_PARSE);
        assert_eq!(code("decompose --alg so:3 --rep std"), EXIT_UNSUPPORTED);
        assert_eq!(code("decompose --alg sl:1 --rep std"), EXIT_UNSUPPORTED);
        assert_eq!(code("decompose --alg sl --rep std"), EXIT_PARSE);
        assert_eq!(code("decompose --alg sl:2 --rep std --bogus 1"), EXIT_PARSE);
        assert_eq!(code("chordal --n 4 --k 5 --p 1"), EXIT_UNSUPPORTED);
        assert_eq!(
            code("components --alg sl:2 --rep std --points 1,0;1"),
            EXIT_DIMENSION
        );
        assert_eq!(code("frobnicate"), EXIT_PARSE);
        assert_eq!(code("--help"), EXIT_OK);
    }

    #[test]
    fn spec_echo_is_flat() {
        let spec = parse_spec(argv("decompose --alg sl:2 --rep sym(2,std)")).unwrap();
        let v = serde_json::to_value(&spec).unwrap();
        assert_eq!(
            v,
            json!({"command": "decompose", "algebra": "sl:2", "n": 2, "rep": "sym(2,std)", "dim": 3})
        );
    }
}
