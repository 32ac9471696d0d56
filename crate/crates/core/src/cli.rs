//! Command-line front end.
//!
//! Every command prints one compact JSON report on standard output carrying
//! `"schema": 1`, the command echo, the tolerance in effect, the result and
//! the exit status. Diagnostics go to standard error. Exit codes are 0 on
//! success, 1 when a verification fails and 2 for usage or input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::classify::classify_all;
use crate::error::{Error, Result};
use crate::inverse_solve::{
    solve_positive, solve_rank_one, solve_rank_two_normal, solve_square_zero, MeanPreimage,
    PreimageKind, RankOneSpec, RankTwoNormalSpec,
};
use crate::io::{parse_matrix, parse_vector, ser_complex, ser_complex_list, MatrixFile};
use crate::matrix_core::{fro_norm, scale, CMatrix, CVector, RankDecision, C64};
use crate::polar::{PolarFactorization, PolarResiduals};
use crate::spectra::{eigenvalues, joint_point_spectrum};
use crate::tolerance::ToleranceContext;
use crate::transforms::{aluthge_transform, duggal_transform, mean_transform};
use crate::verify::{run_trials, HarnessConfig, TheoremId, VerdictReport};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "mean-transform", version, about = "Polar decomposition, mean transform and theorem checks for complex matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct TolArgs {
    /// Absolute tolerance, scaled by max(1, ||A||_2)
    #[arg(long, default_value_t = 1e-10)]
    tol_atol: f64,
    /// Relative tolerance
    #[arg(long, default_value_t = 1e-8)]
    tol_rtol: f64,
    /// Singular-value rank factor
    #[arg(long, default_value_t = 1e-12)]
    tol_rank_eps: f64,
}

impl TolArgs {
    fn context(&self) -> Result<ToleranceContext> {
        ToleranceContext::new(self.tol_atol, self.tol_rtol, self.tol_rank_eps)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Polar decomposition T = V|T|
    Polar {
        input: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Mean, Duggal or Aluthge transform
    Transform {
        #[arg(long, value_enum)]
        kind: TransformKind,
        input: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Every class predicate with residuals and witnesses
    Classify {
        input: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Eigenvalues, or the joint point spectrum with --joint
    Spectrum {
        #[arg(long)]
        joint: bool,
        input: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Solve M(X) = T for the supported families of T
    Solve {
        #[arg(long, value_enum)]
        case: SolveCase,
        /// Matrix file, for square-zero and positive
        input: Option<PathBuf>,
        /// Vector file for x
        #[arg(long)]
        x: Option<PathBuf>,
        /// Vector file for y
        #[arg(long)]
        y: Option<PathBuf>,
        /// Eigenvalue on x, as RE,IM
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        delta: Option<C64>,
        /// Eigenvalue on y, as RE,IM
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        nu: Option<C64>,
        /// Family parameter when the phases are opposite, as RE,IM
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        beta: Option<C64>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Run the theorem harness
    Verify {
        /// Theorem id, or `all`
        #[arg(long, default_value = "all")]
        theorem: String,
        #[arg(long, value_delimiter = ',', default_values_t = vec![2usize, 3, 4])]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include wall-clock times (makes reports run-dependent)
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::Polar { .. } => "polar",
            Self::Transform { .. } => "transform",
            Self::Classify { .. } => "classify",
            Self::Spectrum { .. } => "spectrum",
            Self::Solve { .. } => "solve",
            Self::Verify { .. } => "verify",
        }
    }

    fn tol(&self) -> &TolArgs {
        match self {
            Self::Polar { tol, .. }
            | Self::Transform { tol, .. }
            | Self::Classify { tol, .. }
            | Self::Spectrum { tol, .. }
            | Self::Solve { tol, .. }
            | Self::Verify { tol, .. } => tol,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "lowercase")]
enum TransformKind {
    Mean,
    Duggal,
    Aluthge,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum SolveCase {
    RankOne,
    RankTwo,
    SquareZero,
    Positive,
}

fn parse_complex(s: &str) -> std::result::Result<C64, String> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("expected RE,IM with finite numbers, got {s:?}"))
    };
    Ok(C64::new(parse(re)?, parse(im)?))
}

#[derive(Serialize)]
struct Echo {
    name: &'static str,
    args: Vec<String>,
}

#[derive(Serialize)]
struct Report<R: Serialize> {
    schema: u32,
    command: Echo,
    tolerance: ToleranceContext,
    result: R,
    status: &'static str,
    exit_code: i32,
}

/// A command's payload and its exit code. The payload is kept as
/// serialized text so that 17-digit matrix entries pass through verbatim.
struct Outcome {
    result: Box<RawValue>,
    exit_code: i32,
}

impl Outcome {
    fn ok(result: impl Serialize) -> Result<Self> {
        Self::with_code(result, EXIT_OK)
    }

    fn with_code(result: impl Serialize, exit_code: i32) -> Result<Self> {
        let result = serde_json::value::to_raw_value(&result)
            .map_err(|e| Error::MalformedInput(e.to_string()))?;
        Ok(Self { result, exit_code })
    }
}

fn read_matrix(path: &Path) -> Result<CMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))
}

fn read_vector(path: &Path) -> Result<CVector> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))?;
    parse_vector(&text).map_err(|e| Error::MalformedInput(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct PolarResult<'a> {
    n: usize,
    rank: usize,
    v: MatrixFile<'a>,
    p: MatrixFile<'a>,
    residuals: PolarResiduals,
    diagnostics: RankDecision,
}

fn cmd_polar(input: &Path, tol: &ToleranceContext) -> Result<Outcome> {
    let t = read_matrix(input)?;
    let f = PolarFactorization::new(&t, tol)?;
    let parts = &f.parts;
    Outcome::ok(PolarResult {
        n: parts.n(),
        rank: parts.rank,
        v: MatrixFile(&parts.v),
        p: MatrixFile(&parts.p),
        residuals: parts.residuals(&t)?,
        diagnostics: parts.diagnostics,
    })
}

#[derive(Serialize)]
struct TransformResult<'a> {
    kind: TransformKind,
    matrix: MatrixFile<'a>,
}

fn cmd_transform(kind: TransformKind, input: &Path, tol: &ToleranceContext) -> Result<Outcome> {
    let t = read_matrix(input)?;
    let m = match kind {
        TransformKind::Mean => mean_transform(&t, tol)?,
        TransformKind::Duggal => duggal_transform(&t, tol)?,
        TransformKind::Aluthge => aluthge_transform(&t, tol)?,
    };
    Outcome::ok(TransformResult {
        kind,
        matrix: MatrixFile(&m),
    })
}

fn cmd_classify(input: &Path, tol: &ToleranceContext) -> Result<Outcome> {
    let t = read_matrix(input)?;
    Outcome::ok(classify_all(&t, tol)?)
}

#[derive(Serialize)]
struct Eigenvalues {
    #[serde(serialize_with = "ser_complex_list")]
    eigenvalues: Vec<C64>,
}

fn cmd_spectrum(joint: bool, input: &Path, tol: &ToleranceContext) -> Result<Outcome> {
    let t = read_matrix(input)?;
    if joint {
        #[derive(Serialize)]
        struct Joint<T: Serialize> {
            joint_point_spectrum: T,
        }
        Outcome::ok(Joint {
            joint_point_spectrum: joint_point_spectrum(&t, tol)?,
        })
    } else {
        Outcome::ok(Eigenvalues {
            eigenvalues: eigenvalues(&t)?,
        })
    }
}

#[derive(Serialize)]
struct RoundTrip {
    residual: f64,
    threshold: f64,
    holds: bool,
}

impl RoundTrip {
    fn check(x: &CMatrix, t: &CMatrix, tol: &ToleranceContext) -> Result<Self> {
        let residual = fro_norm(&(mean_transform(x, tol)? - t));
        let threshold = tol.rel_bound(scale(t));
        Ok(Self {
            residual,
            threshold,
            holds: residual <= threshold,
        })
    }
}

#[derive(Serialize)]
struct FamilyInfo {
    radius_sq: f64,
    #[serde(serialize_with = "ser_complex")]
    phase: C64,
    #[serde(serialize_with = "ser_complex")]
    beta: C64,
    beta_on_boundary: bool,
}

#[derive(Serialize)]
struct SolveResult<'a> {
    kind: PreimageKind,
    target: MatrixFile<'a>,
    solution: MatrixFile<'a>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<FamilyInfo>,
    roundtrip: RoundTrip,
    warnings: Vec<String>,
}

fn unit(n: usize, k: usize) -> CVector {
    CVector::from_fn(n, |i, _| C64::new(if i == k { 1.0 } else { 0.0 }, 0.0))
}

fn required<T>(value: Option<T>, flag: &str, case: &str) -> Result<T> {
    value.ok_or_else(|| Error::MalformedInput(format!("--case {case} needs {flag}")))
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    case: SolveCase,
    input: Option<&Path>,
    x: Option<&Path>,
    y: Option<&Path>,
    delta: Option<C64>,
    nu: Option<C64>,
    beta: Option<C64>,
    tol: &ToleranceContext,
) -> Result<Outcome> {
    let mut warnings = Vec::new();
    let mut family = None;
    let (target, preimage) = match case {
        SolveCase::RankOne => {
            let x = read_vector(required(x, "--x", "rank-one")?)?;
            let y = read_vector(required(y, "--y", "rank-one")?)?;
            let spec = RankOneSpec::new(x, y)?;
            (spec.matrix(), solve_rank_one(&spec)?)
        }
        SolveCase::RankTwo => {
            let delta = required(delta, "--delta", "rank-two")?;
            let nu = required(nu, "--nu", "rank-two")?;
            let (x, y) = match (x, y) {
                (Some(x), Some(y)) => (read_vector(x)?, read_vector(y)?),
                (None, None) => (unit(2, 0), unit(2, 1)),
                _ => {
                    return Err(Error::MalformedInput(
                        "--x and --y must be given together".into(),
                    ))
                }
            };
            let spec = RankTwoNormalSpec::new(delta, nu, x, y, tol)?;
            (spec.matrix(), solve_rank_two_normal(&spec, tol)?)
        }
        SolveCase::SquareZero => {
            let t = read_matrix(required(input, "an input matrix", "square-zero")?)?;
            let p = solve_square_zero(&t, tol)?;
            (t, p)
        }
        SolveCase::Positive => {
            let t = read_matrix(required(input, "an input matrix", "positive")?)?;
            let p = solve_positive(&t, tol)?;
            (t, p)
        }
    };
    let solution = match &preimage {
        MeanPreimage::Family(fam) => {
            let b = beta.unwrap_or_default();
            let x = fam.evaluate(b)?;
            let on_boundary = (b.norm_sqr() - fam.radius_sq()).abs() <= tol.rtol * fam.radius_sq();
            if beta.is_none() {
                warnings.push("solutions form a family; showing beta = 0".into());
            }
            if on_boundary {
                warnings.push(
                    "beta lies on the admissibility circle, where |X| is singular".into(),
                );
            }
            family = Some(FamilyInfo {
                radius_sq: fam.radius_sq(),
                phase: fam.phase,
                beta: b,
                beta_on_boundary: on_boundary,
            });
            x
        }
        other => {
            if beta.is_some() {
                warnings.push("--beta ignored: the solution is unique".into());
            }
            other.solution().cloned().expect("non-family preimage has a solution")
        }
    };
    warnings.extend(preimage.warnings().iter().cloned());
    let roundtrip = RoundTrip::check(&solution, &target, tol)?;
    let code = if roundtrip.holds { EXIT_OK } else { EXIT_FAILURE };
    Outcome::with_code(
        SolveResult {
            kind: preimage.kind(),
            target: MatrixFile(&target),
            solution: MatrixFile(&solution),
            family,
            roundtrip,
            warnings,
        },
        code,
    )
}

#[derive(Serialize)]
struct VerifyResult {
    seed: u64,
    dims: Vec<usize>,
    trials_per_dim: usize,
    reports: Vec<VerdictReport>,
}

fn cmd_verify(
    theorem: &str,
    dims: &[usize],
    trials: usize,
    seed: u64,
    timings: bool,
    tol: &ToleranceContext,
) -> Result<Outcome> {
    let ids = TheoremId::parse_selection(theorem)?;
    if let Some(&d) = dims.iter().find(|&&d| d == 0) {
        return Err(Error::MalformedInput(format!("dimension {d} is not allowed")));
    }
    let mut config = HarnessConfig::new(*tol);
    config.timings = timings;
    let reports = ids
        .into_iter()
        .map(|id| run_trials(id, dims, trials, seed, &config))
        .collect::<Result<Vec<_>>>()?;
    let code = if reports.iter().all(VerdictReport::accepted) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    };
    Outcome::with_code(
        VerifyResult {
            seed,
            dims: dims.to_vec(),
            trials_per_dim: trials,
            reports,
        },
        code,
    )
}

fn dispatch(command: &Command, tol: &ToleranceContext) -> Result<Outcome> {
    match command {
        Command::Polar { input, .. } => cmd_polar(input, tol),
        Command::Transform { kind, input, .. } => cmd_transform(*kind, input, tol),
        Command::Classify { input, .. } => cmd_classify(input, tol),
        Command::Spectrum { joint, input, .. } => cmd_spectrum(*joint, input, tol),
        Command::Solve {
            case,
            input,
            x,
            y,
            delta,
            nu,
            beta,
            ..
        } => cmd_solve(
            *case,
            input.as_deref(),
            x.as_deref(),
            y.as_deref(),
            *delta,
            *nu,
            *beta,
            tol,
        ),
        Command::Verify {
            theorem,
            dims,
            trials,
            seed,
            timings,
            ..
        } => cmd_verify(theorem, dims, *trials, *seed, *timings, tol),
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let outcome = cli
        .command
        .tol()
        .context()
        .and_then(|tol| Ok((tol, dispatch(&cli.command, &tol)?)));
    let (tol, outcome) = match outcome {
        Ok(pair) => pair,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let report = Report {
        schema: SCHEMA_VERSION,
        command: Echo {
            name: cli.command.name(),
            args: args.iter().skip(1).cloned().collect(),
        },
        tolerance: tol,
        result: outcome.result,
        status: if outcome.exit_code == EXIT_OK { "ok" } else { "failed" },
        exit_code: outcome.exit_code,
    };
    match serde_json::to_string(&report) {
        Ok(text) => {
            let _ = writeln!(stdout, "{text}");
            outcome.exit_code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}
