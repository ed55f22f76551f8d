//! Command-line driver.
//!
//! Exit codes: `0` pass, `1` verification failure, `2` unsupported input or
//! usage error, `3` I/O or parse error. Machine output is JSON on stdout;
//! errors are JSON on stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::classes::{all_pass, build_set, verify_set, CheckResult};
use crate::error::Error;
use crate::io;
use crate::matcore::Tolerance;
use crate::mub::{check_family, family, FamilyReport, FamilySource};
use crate::tables;
use crate::tensors::{diagonal_tensor, spherical_tensor, tau3_comparison, SpinLabel};
use crate::tomography::run_trials;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_IO: i32 = 3;

pub const TOL_ENV: &str = "MUBKIT_TOL";

#[derive(Debug, Parser)]
#[command(name = "mubkit", version, about = "Mutually unbiased bases, commuting operator classes and tomography")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build and certify a complete MUB family.
    Mub(MubArgs),
    /// Build the operator set (and its family) and verify it.
    Operators(OperatorsArgs),
    /// Re-verify a directory written by `mub` or `operators`.
    Verify(VerifyArgs),
    /// Spherical tensor operators.
    Tensors(TensorsArgs),
    /// Tomography round-trip simulation.
    Tomo(TomoArgs),
    /// Print the built-in symbolic tables.
    Tables,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SourceArg {
    Paper,
    Generated,
}

impl From<SourceArg> for FamilySource {
    fn from(s: SourceArg) -> Self {
        match s {
            SourceArg::Paper => FamilySource::Paper,
            SourceArg::Generated => FamilySource::Generated,
        }
    }
}

#[derive(Debug, Args)]
pub struct MubArgs {
    #[arg(long)]
    pub dim: usize,
    /// Defaults to tables for d <= 5 and the generated construction otherwise.
    #[arg(long, value_enum)]
    pub source: Option<SourceArg>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OperatorsArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, value_enum)]
    pub source: Option<SourceArg>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct TensorsArgs {
    #[arg(long)]
    pub two_j: u32,
    /// Rank; without it every diagonal `τ^k_0` is listed.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub q: i32,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Compare readings of the spin-3/2 `τ^3_0` polynomial.
    #[arg(long)]
    pub tau3_check: bool,
}

/// `exact` or a positive shot count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shots {
    Exact,
    Count(u64),
}

impl FromStr for Shots {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("exact") {
            return Ok(Shots::Exact);
        }
        match s.parse::<u64>() {
            Ok(0) => Err("shot count must be positive".into()),
            Ok(n) => Ok(Shots::Count(n)),
            Err(_) => Err(format!("expected a positive integer or \"exact\", got {s:?}")),
        }
    }
}

#[derive(Debug, Args)]
pub struct TomoArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "exact")]
    pub shots: Shots,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    /// Clip the estimate to the nearest positive semidefinite unit-trace matrix.
    #[arg(long)]
    pub project: bool,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnsupportedDimension { .. } | Error::InvalidArgument(_) => EXIT_UNSUPPORTED,
        Error::Io { .. } | Error::Parse { .. } | Error::DimensionMismatch(_) | Error::InvalidData(_) => EXIT_IO,
    }
}

fn error_json(e: &Error) -> serde_json::Value {
    let kind = match e {
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::UnsupportedDimension { .. } => "unsupported_dimension",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::InvalidData(_) => "invalid_data",
        Error::Io { .. } => "io",
        Error::Parse { .. } => "parse",
    };
    let mut v = json!({ "error": kind, "message": e.to_string() });
    if let Error::UnsupportedDimension { dim, reason } = e {
        v["dim"] = json!(dim);
        v["reason"] = json!(reason);
    }
    v
}

fn emit(out: &mut dyn Write, value: &impl Serialize) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

/// Default tolerance, overridden by `MUBKIT_TOL`.
pub fn default_tolerance() -> Result<Tolerance, Error> {
    match std::env::var(TOL_ENV) {
        Ok(s) => {
            let eps: f64 = s
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("{TOL_ENV}={s:?} is not a number")))?;
            Tolerance::new(eps)
        }
        Err(_) => Ok(Tolerance::DEFAULT),
    }
}

enum Outcome {
    Done(i32),
    Failed(Error),
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::Failed(e)
    }
}

fn io_error(e: std::io::Error) -> Outcome {
    Outcome::Failed(Error::Io {
        path: "<stdout>".into(),
        message: e.to_string(),
    })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_UNSUPPORTED } else { EXIT_PASS };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Outcome::Done(code) => code,
        Outcome::Failed(e) => {
            let _ = emit(err, &error_json(&e));
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    let result = match cmd {
        Command::Mub(a) => cmd_mub(a, out),
        Command::Operators(a) => cmd_operators(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Tensors(a) => cmd_tensors(a, out),
        Command::Tomo(a) => cmd_tomo(a, out),
        Command::Tables => cmd_tables(out),
    };
    match result {
        Ok(code) => Outcome::Done(code),
        Err(o) => o,
    }
}

fn pass_code(pass: bool) -> i32 {
    if pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn cmd_mub(a: MubArgs, out: &mut dyn Write) -> Result<i32, Outcome> {
    let tol = default_tolerance()?;
    let f = family(a.dim, a.source.map(Into::into))?;
    let report = check_family(&f, tol);
    let files = match &a.out {
        Some(dir) => io::write_family(dir, &f)?,
        None => Vec::new(),
    };
    if let Some(dir) = &a.out {
        io::write_json(&dir.join(io::REPORT_FILE), &json!({ "family": &report }))?;
    }
    emit(
        out,
        &json!({
            "dim": f.dim(),
            "source": f.source(),
            "bases": f.labels(),
            "files": files,
            "tolerance": tol,
            "report": &report,
        }),
    )
    .map_err(io_error)?;
    Ok(pass_code(report.pass))
}

fn cmd_operators(a: OperatorsArgs, out: &mut dyn Write) -> Result<i32, Outcome> {
    let tol = default_tolerance()?;
    let f = family(a.dim, a.source.map(Into::into))?;
    let set = build_set(&f)?;
    let checks = verify_set(&set, tol);
    let pass = all_pass(&checks);
    let mut files = Vec::new();
    if let Some(dir) = &a.out {
        files.extend(io::write_family(dir, &f)?);
        files.extend(io::write_operators(dir, &set)?);
        io::write_json(&dir.join(io::REPORT_FILE), &checks)?;
    }
    emit(
        out,
        &json!({
            "dim": set.dim(),
            "classes": set.classes().len(),
            "operators": set.len(),
            "files": files,
            "tolerance": tol,
            "checks": checks,
            "pass": pass,
        }),
    )
    .map_err(io_error)?;
    Ok(pass_code(pass))
}

#[derive(Serialize)]
struct VerifyReport {
    dir: PathBuf,
    tolerance: Tolerance,
    family: Option<FamilyReport>,
    operators: Option<Vec<CheckResult>>,
    pass: bool,
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32, Outcome> {
    let tol = match a.tol {
        Some(eps) => Tolerance::new(eps)?,
        None => default_tolerance()?,
    };
    let dir = &a.input;
    let has_family = dir.join(io::FAMILY_MANIFEST).is_file();
    let has_ops = dir.join(io::OPERATORS_MANIFEST).is_file();
    if !has_family {
        let what = if has_ops {
            "operators.json needs the family.json written alongside it"
        } else {
            "no family.json or operators.json found"
        };
        return Err(Error::Io {
            path: dir.display().to_string(),
            message: what.into(),
        }
        .into());
    }
    let f = io::read_family(dir)?;
    let family_report = check_family(&f, tol);
    let ops = if has_ops {
        Some(verify_set(&io::read_operators(dir, &f)?, tol))
    } else {
        None
    };
    let pass = family_report.pass && ops.as_deref().is_none_or(all_pass);
    emit(
        out,
        &VerifyReport {
            dir: dir.clone(),
            tolerance: tol,
            family: Some(family_report),
            operators: ops,
            pass,
        },
    )
    .map_err(io_error)?;
    Ok(pass_code(pass))
}

fn cmd_tensors(a: TensorsArgs, out: &mut dyn Write) -> Result<i32, Outcome> {
    let spin = SpinLabel::new(a.two_j)?;
    if a.tau3_check {
        let tol = default_tolerance()?;
        emit(out, &json!({ "two_j": 3, "k": 3, "q": 0, "comparisons": tau3_comparison(tol.eps()) }))
            .map_err(io_error)?;
        return Ok(EXIT_PASS);
    }
    let value = match a.k {
        Some(k) => {
            let t = spherical_tensor(spin, k, a.q)?;
            json!({ "two_j": a.two_j, "k": k, "q": a.q, "matrix": t.matrix })
        }
        None => {
            let diagonals = (1..=a.two_j)
                .map(|k| Ok(json!({ "k": k, "diagonal": diagonal_tensor(spin, k)? })))
                .collect::<Result<Vec<_>, Error>>()?;
            json!({ "two_j": a.two_j, "q": 0, "diagonals": diagonals })
        }
    };
    if let Some(path) = &a.out {
        io::write_json(path, &value)?;
    }
    emit(out, &value).map_err(io_error)?;
    Ok(EXIT_PASS)
}

fn cmd_tomo(a: TomoArgs, out: &mut dyn Write) -> Result<i32, Outcome> {
    let tol = default_tolerance()?;
    let f = family(a.dim, None)?;
    let set = build_set(&f)?;
    let shots = match a.shots {
        Shots::Exact => None,
        Shots::Count(n) => Some(n),
    };
    let report = run_trials(&f, &set, a.seed, shots, a.trials, a.project)?;
    emit(out, &report).map_err(io_error)?;
    // Only exact records carry a pass/fail contract.
    let pass = shots.is_some()
        || report
            .aggregate
            .as_ref()
            .is_none_or(|agg| agg.max_trace_distance <= tol.eps());
    Ok(pass_code(pass))
}

fn cmd_tables(out: &mut dyn Write) -> Result<i32, Outcome> {
    let mut text = String::new();
    for (d, group) in tables::all_tables() {
        text.push_str(&format!("== dim {d} ==\n"));
        for t in group {
            text.push_str(&t.render());
            text.push('\n');
        }
    }
    out.write_all(text.as_bytes()).map_err(io_error)?;
    Ok(EXIT_PASS)
}
