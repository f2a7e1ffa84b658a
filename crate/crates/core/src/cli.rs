//! The `simplex-ramsey` command line.
//!
//! Exit codes: 0 decided, 1 input error, 2 degenerate simplex, 3 undecided or
//! infeasible, 4 internal failure.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use crate::deficits::{build_embedding, decompose_all_pairs, DEFAULT_MAX_VERTICES};
use crate::error::Error;
use crate::exactgeom::{diameter_sq, SquaredDistanceMatrix};
use crate::family::{counterexample_report, FamilyParams};
use crate::ramseytoy::{arrow_check, ArrowStatus, DEFAULT_COLOR_CAP};
use crate::rational::Rational;
use crate::report::{
    check_simplex, render_check, render_family, to_json, verify_certificate, ConfigInput,
    DecompositionJson, EmbeddingJson, FamilyJson, SimplexInput, Verdict,
};

pub const EXIT_DECIDED: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

pub const MAX_N_VAR: &str = "SIMPLEX_RAMSEY_MAX_N";
pub const COLOR_CAP_VAR: &str = "SIMPLEX_RAMSEY_COLOR_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "simplex-ramsey",
    version,
    about = "Exact diameter-Ramsey checks for simplices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// JSON file with `points` or `sqdist`; standard input when omitted or `-`.
    input: Option<PathBuf>,
    /// Largest vertex count for the decomposition search.
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every test on a simplex and report a verdict.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        human: bool,
    },
    /// Report on the family A_d(s, t, u).
    Family {
        #[arg(short = 'd')]
        d: usize,
        #[arg(short = 's', allow_negative_numbers = true)]
        s: Rational,
        #[arg(short = 't', allow_negative_numbers = true)]
        t: Rational,
        #[arg(short = 'u', allow_negative_numbers = true)]
        u: Rational,
        #[arg(long)]
        human: bool,
    },
    /// Emit a deficit decomposition certificate.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Re-check a decomposition certificate against a simplex.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Certificate JSON as printed by `decompose`.
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Emit the product-of-simplices embedding.
    Embed {
        #[command(flatten)]
        input: InputArgs,
        /// Also emit floating coordinates, checked to this relative tolerance.
        #[arg(long, value_name = "TOL")]
        realize: Option<f64>,
    },
    /// Decide R → (A)_q by exhaustive coloring.
    RamseyToy {
        /// Configuration R.
        config: PathBuf,
        /// Target A.
        target: PathBuf,
        #[arg(short = 'q', default_value_t = 2)]
        q: usize,
        /// Largest number of colorings to enumerate.
        #[arg(long)]
        cap: Option<u64>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::MalformedMatrix(_)
            | Error::DuplicatePoints(..)
            | Error::NotADiameterPair(..)
            | Error::TooManyVertices { .. }
            | Error::InvalidParams(_) => EXIT_INPUT,
            Error::Degenerate => EXIT_DEGENERATE,
            Error::SingularSystem
            | Error::ToleranceExceeded { .. }
            | Error::ClosedFormMismatch(_)
            | Error::Inconsistent(_) => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type Outcome = Result<(String, i32), Failure>;

struct Context<'a> {
    stdin: &'a mut dyn Read,
    env: &'a dyn Fn(&str) -> Option<String>,
}

impl Context<'_> {
    fn read(&mut self, path: Option<&PathBuf>) -> Result<String, Failure> {
        match path {
            Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
                .map_err(|e| input_error(format!("cannot read {}: {e}", p.display()))),
            _ => {
                let mut text = String::new();
                self.stdin
                    .read_to_string(&mut text)
                    .map_err(|e| input_error(format!("cannot read standard input: {e}")))?;
                Ok(text)
            }
        }
    }

    fn parse<T: for<'de> Deserialize<'de>>(
        &mut self,
        path: Option<&PathBuf>,
    ) -> Result<T, Failure> {
        let text = self.read(path)?;
        serde_json::from_str(&text).map_err(|e| input_error(format!("invalid input JSON: {e}")))
    }

    fn env_number<T: std::str::FromStr>(&self, var: &str) -> Result<Option<T>, Failure> {
        match (self.env)(var) {
            None => Ok(None),
            Some(v) => v.trim().parse().map(Some).map_err(|_| {
                input_error(format!("{var} must be a non-negative integer, got {v:?}"))
            }),
        }
    }

    fn max_n(&self, flag: Option<usize>) -> Result<usize, Failure> {
        Ok(match flag {
            Some(n) => n,
            None => self.env_number(MAX_N_VAR)?.unwrap_or(DEFAULT_MAX_VERTICES),
        })
    }

    fn simplex(&mut self, args: &InputArgs) -> Result<SquaredDistanceMatrix, Failure> {
        let input: SimplexInput = self.parse(args.input.as_ref())?;
        Ok(input.to_simplex()?)
    }
}

fn cmd_check(ctx: &mut Context, input: &InputArgs, human: bool) -> Outcome {
    let m = ctx.simplex(input)?;
    let report = check_simplex(&m, ctx.max_n(input.max_n)?)?;
    let code = match report.verdict {
        Verdict::Unknown => EXIT_UNDECIDED,
        _ => EXIT_DECIDED,
    };
    let text = if human {
        render_check(&report)
    } else {
        to_json(&report)
    };
    Ok((text, code))
}

fn cmd_family(d: usize, s: &Rational, t: &Rational, u: &Rational, human: bool) -> Outcome {
    let params = FamilyParams::new(d, s.clone(), t.clone(), u.clone())?;
    let report = FamilyJson::from(&counterexample_report(&params)?);
    let text = if human {
        render_family(&report)
    } else {
        to_json(&report)
    };
    Ok((text, EXIT_DECIDED))
}

/// First certificate over the diameter pairs in order, if any.
fn first_certificate(
    ctx: &mut Context,
    input: &InputArgs,
) -> Result<
    (
        SquaredDistanceMatrix,
        Option<crate::deficits::DeficitDecomposition>,
    ),
    Failure,
> {
    let m = ctx.simplex(input)?;
    let results = decompose_all_pairs(&m, ctx.max_n(input.max_n)?)?;
    let found = results.into_iter().find_map(|r| r.decomposition);
    Ok((m, found))
}

fn infeasible(m: &SquaredDistanceMatrix) -> String {
    let pairs: Vec<[usize; 2]> = diameter_sq(m)
        .1
        .into_iter()
        .map(|(a, b)| [a + 1, b + 1])
        .collect();
    to_json(&json!({ "result": "infeasible", "diameter_pairs": pairs }))
}

fn cmd_decompose(ctx: &mut Context, input: &InputArgs) -> Outcome {
    match first_certificate(ctx, input)? {
        (_, Some(d)) => Ok((to_json(&DecompositionJson::from(&d)), EXIT_DECIDED)),
        (m, None) => Ok((infeasible(&m), EXIT_UNDECIDED)),
    }
}

fn cmd_verify(ctx: &mut Context, input: &InputArgs, certificate: &PathBuf) -> Outcome {
    let m = ctx.simplex(input)?;
    let cert: DecompositionJson = ctx.parse(Some(certificate))?;
    let valid = verify_certificate(&m, &cert)?;
    let code = if valid { EXIT_DECIDED } else { EXIT_UNDECIDED };
    Ok((to_json(&json!({ "valid": valid })), code))
}

fn cmd_embed(ctx: &mut Context, input: &InputArgs, realize: Option<f64>) -> Outcome {
    let (m, d) = match first_certificate(ctx, input)? {
        (m, Some(d)) => (m, d),
        (m, None) => return Ok((infeasible(&m), EXIT_UNDECIDED)),
    };
    let embedding = build_embedding(&d);
    if embedding.derived_sqdist != m {
        return Err(Error::Inconsistent("embedding does not reproduce the input".into()).into());
    }
    let mut out = EmbeddingJson::from(&embedding);
    if let Some(tol) = realize {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(input_error("--realize needs a positive tolerance"));
        }
        let cloud = embedding.realize(tol)?;
        out.max_relative_error = Some(cloud.max_relative_error(&m));
        out.coordinates = Some(cloud.points);
    }
    Ok((to_json(&out), EXIT_DECIDED))
}

fn cmd_ramsey_toy(
    ctx: &mut Context,
    config: &PathBuf,
    target: &PathBuf,
    q: usize,
    cap: Option<u64>,
) -> Outcome {
    if q == 0 {
        return Err(input_error("-q must be at least 1"));
    }
    let cap = match cap {
        Some(c) => c,
        None => ctx.env_number(COLOR_CAP_VAR)?.unwrap_or(DEFAULT_COLOR_CAP),
    };
    let r = ctx.parse::<ConfigInput>(Some(config))?.to_config()?;
    let a = ctx.parse::<ConfigInput>(Some(target))?.to_config()?;
    let verdict = arrow_check(&r, &a.sqdist, q, cap);
    let code = match verdict.status {
        ArrowStatus::Infeasible => EXIT_UNDECIDED,
        _ => EXIT_DECIDED,
    };
    let out = json!({
        "status": verdict.status,
        "witness_coloring": verdict.witness_coloring,
        "colorings_checked": verdict.colorings_checked,
        "config_points": r.len(),
        "target_points": a.len(),
        "q": q,
        "cap": cap,
    });
    Ok((to_json(&out), code))
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    env: &dyn Fn(&str) -> Option<String>,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    EXIT_DECIDED
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    EXIT_INPUT
                }
            };
        }
    };
    let mut ctx = Context { stdin, env };
    let outcome = match &cli.command {
        Command::Check { input, human } => cmd_check(&mut ctx, input, *human),
        Command::Family { d, s, t, u, human } => cmd_family(*d, s, t, u, *human),
        Command::Decompose { input } => cmd_decompose(&mut ctx, input),
        Command::Verify { input, certificate } => cmd_verify(&mut ctx, input, certificate),
        Command::Embed { input, realize } => cmd_embed(&mut ctx, input, *realize),
        Command::RamseyToy {
            config,
            target,
            q,
            cap,
        } => cmd_ramsey_toy(&mut ctx, config, target, *q, *cap),
    };
    match outcome {
        Ok((text, code)) => {
            let _ = writeln!(stdout, "{}", text.trim_end());
            code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

pub fn main() -> i32 {
    let env = |k: &str| std::env::var(k).ok();
    run(
        std::env::args_os(),
        &mut std::io::stdin().lock(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
        &env,
    )
}
