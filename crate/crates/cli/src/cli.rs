//! Argument parsing and validation.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use p6_core::TruncationPolicy;
use thiserror::Error;

use crate::literal::{parse_complex, parse_complex_list};

#[derive(Debug, Error)]
pub enum UsageError {
    /// Also carries `--help` / `--version` output, which exits 0.
    #[error(transparent)]
    Clap(#[from] clap::Error),
    #[error("{flag}: {message}")]
    Invalid { flag: String, message: String },
}

impl UsageError {
    fn invalid(flag: &str, message: impl Into<String>) -> Self {
        UsageError::Invalid {
            flag: flag.to_string(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            UsageError::Clap(e) => e.exit_code(),
            UsageError::Invalid { .. } => 2,
        }
    }

    /// Prints to stdout for help/version, stderr otherwise.
    pub fn print(&self) {
        match self {
            UsageError::Clap(e) => {
                let _ = e.print();
            }
            other => eprintln!("error: {other}"),
        }
    }
}

fn complex(s: &str) -> Result<Complex64, String> {
    parse_complex(s)
}

fn real(s: &str) -> Result<f64, String> {
    let z = parse_complex(s)?;
    if z.im != 0.0 {
        return Err(format!("{s:?} must be real"));
    }
    Ok(z.re)
}

fn positive(s: &str) -> Result<f64, String> {
    let v = real(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{s:?} must be positive"))
    }
}

fn integer(s: &str) -> Result<i64, String> {
    let v = real(s)?;
    if v.fract() != 0.0 || v.abs() > (1u64 << 52) as f64 {
        return Err(format!("{s:?} must be an integer"));
    }
    Ok(v as i64)
}

fn count(s: &str) -> Result<usize, String> {
    let v = integer(s)?;
    usize::try_from(v).map_err(|_| format!("{s:?} must be non-negative"))
}

/// A comma-separated list of complex literals, taken as one flag value.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexList(pub Vec<Complex64>);

fn complex_list(s: &str) -> Result<ComplexList, String> {
    parse_complex_list(s).map(ComplexList)
}

fn order(s: &str) -> Result<usize, String> {
    let v = count(s)?;
    if v <= 3 {
        Ok(v)
    } else {
        Err(format!("order {v} outside 0..=3"))
    }
}

#[derive(Parser, Debug, Clone)]
#[command(
    name = "p6verify",
    version,
    about = "Evaluate theta, Weierstrass and hypergeometric functions and verify the Picard, Hitchin and Chudnovsky identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Evaluate one function and its derivatives.
    Eval(EvalArgs),
    /// P6 residual of a Picard solution.
    Picard(SolutionArgs),
    /// P6 residual of a Hitchin solution.
    Hitchin(SolutionArgs),
    /// Run one verification suite.
    Verify(VerifyArgs),
    /// Leading asymptotics of x(τ) at the cusps.
    Asymptotics(AsymptoticsArgs),
    /// The Chudnovsky identity [u,τ] + 2℘(2u) = 0.
    Chudnovsky(ChudnovskyArgs),
    /// Recover the algebraic curve relating x and y.
    FitCurve(FitArgs),
    /// Every suite with its default settings.
    Suite(SuiteArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eval(_) => "eval",
            Command::Picard(_) => "picard",
            Command::Hitchin(_) => "hitchin",
            Command::Verify(_) => "verify",
            Command::Asymptotics(_) => "asymptotics",
            Command::Chudnovsky(_) => "chudnovsky",
            Command::FitCurve(_) => "fit-curve",
            Command::Suite(_) => "suite",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Eval(a) => &a.common,
            Command::Picard(a) | Command::Hitchin(a) => &a.common,
            Command::Verify(a) => &a.common,
            Command::Asymptotics(a) => &a.common,
            Command::Chudnovsky(a) => &a.common,
            Command::FitCurve(a) => &a.common,
            Command::Suite(a) => &a.common,
        }
    }

    fn taus(&self) -> &[Complex64] {
        match self {
            Command::Eval(a) => &a.points.tau,
            Command::Picard(a) | Command::Hitchin(a) => &a.points.tau,
            Command::Verify(a) => &a.points.tau,
            Command::Asymptotics(a) => &a.tau,
            Command::Chudnovsky(a) => &a.points.tau,
            Command::FitCurve(_) | Command::Suite(_) => &[],
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Relative size at which a series term counts as negligible.
    #[arg(long, value_parser = positive)]
    pub trunc_tol: Option<f64>,
    /// Series term budget.
    #[arg(long, value_parser = count)]
    pub max_terms: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct Points {
    /// Evaluation point; repeatable, overrides --grid.
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    pub tau: Vec<Complex64>,
    /// Number of points from the built-in grid.
    #[arg(long, value_parser = count)]
    pub grid: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct SolutionSelect {
    #[arg(long, value_parser = integer, allow_hyphen_values = true)]
    pub nu: Option<i64>,
    #[arg(long, value_parser = integer, allow_hyphen_values = true)]
    pub mu: Option<i64>,
    #[arg(long = "N", value_parser = integer)]
    pub n: Option<i64>,
    /// Slope of the linear function Aτ + B; overrides --nu/--N.
    #[arg(long = "A", value_parser = complex, allow_hyphen_values = true)]
    pub a: Option<Complex64>,
    #[arg(long = "B", value_parser = complex, allow_hyphen_values = true)]
    pub b: Option<Complex64>,
    /// P6 parameters α,β,γ,δ to test against.
    #[arg(long, value_parser = complex_list, allow_hyphen_values = true)]
    pub params: Option<ComplexList>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Auto,
    Unit,
    Double,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FnName {
    Theta1,
    Theta2,
    Theta3,
    Theta4,
    Theta1prime,
    Wp,
    X,
    #[value(name = "2f1")]
    Hyp2f1,
    U,
}

#[derive(Args, Debug, Clone)]
pub struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    pub func: FnName,
    #[arg(long, value_parser = complex, allow_hyphen_values = true, default_value = "0")]
    pub z: Complex64,
    #[arg(long, value_parser = order, default_value = "0")]
    pub order: usize,
    #[arg(long, value_enum, default_value_t = ConventionArg::Auto)]
    pub convention: ConventionArg,
    /// Hypergeometric a,b,c for --fn 2f1.
    #[arg(long, value_parser = complex_list, allow_hyphen_values = true)]
    pub params: Option<ComplexList>,
    #[command(flatten)]
    pub points: Points,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct SolutionArgs {
    #[arg(long, value_parser = positive)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub select: SolutionSelect,
    #[command(flatten)]
    pub points: Points,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Picard,
    Hitchin,
    XSchwarz,
    WpIdentity,
    ThetaIdentities,
    Substitution,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub what: What,
    #[arg(long, value_parser = positive)]
    pub tol: Option<f64>,
    /// Argument of ℘ for --what wp-identity.
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    pub z: Option<Complex64>,
    #[arg(long, value_enum, default_value_t = ConventionArg::Auto)]
    pub convention: ConventionArg,
    #[command(flatten)]
    pub select: SolutionSelect,
    #[command(flatten)]
    pub points: Points,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CuspArg {
    Zero,
    One,
    Infinity,
}

#[derive(Args, Debug, Clone)]
pub struct AsymptoticsArgs {
    /// Cusp to examine; all three when absent.
    #[arg(long, value_enum)]
    pub cusp: Option<CuspArg>,
    /// Sample point; repeatable, replaces the built-in sequence.
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    pub tau: Vec<Complex64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct ChudnovskyArgs {
    #[arg(long, value_parser = positive)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub points: Points,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Picard,
    Hitchin,
}

#[derive(Args, Debug, Clone)]
pub struct FitArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Picard)]
    pub family: FamilyArg,
    /// Largest total degree tried.
    #[arg(long, value_parser = count, default_value = "6")]
    pub max_deg: usize,
    /// Held-out residual tolerance.
    #[arg(long, value_parser = positive)]
    pub tol: Option<f64>,
    #[command(flatten)]
    pub select: SolutionSelect,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct SuiteArgs {
    #[command(flatten)]
    pub common: Common,
}

/// A validated invocation.
#[derive(Debug, Clone)]
pub struct CommandSpec {
    pub command: Command,
    /// Arguments after the subcommand, verbatim.
    pub args: Vec<String>,
    pub policy: TruncationPolicy,
}

/// Parses `argv` (without the program name).
pub fn parse_command<S: AsRef<str>>(argv: &[S]) -> Result<CommandSpec, UsageError> {
    let argv: Vec<String> = argv.iter().map(|s| s.as_ref().to_string()).collect();
    let cli = Cli::try_parse_from(std::iter::once("p6verify".to_string()).chain(argv.iter().cloned()))?;
    let command = cli.command;

    let base = TruncationPolicy::default();
    let common = command.common();
    let policy = TruncationPolicy::new(
        common.trunc_tol.unwrap_or(base.term_tol),
        common.max_terms.unwrap_or(base.max_terms),
        base.min_im_tau,
    )
    .map_err(|e| {
        let flag = if common.max_terms.is_some() { "--max-terms" } else { "--trunc-tol" };
        UsageError::invalid(flag, e.to_string())
    })?;

    for tau in command.taus() {
        if tau.im < policy.min_im_tau {
            return Err(UsageError::invalid(
                "--tau",
                format!("Im(tau) = {} is below min_im_tau = {}", tau.im, policy.min_im_tau),
            ));
        }
    }
    validate(&command)?;

    let args = echo_args(&argv[1..]);
    Ok(CommandSpec { command, args, policy })
}

/// Arguments echoed into the report; the output destination is left out
/// so that a report's bytes do not depend on where it is written.
fn echo_args(args: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(args.len());
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--out" {
            it.next();
        } else if !a.starts_with("--out=") {
            out.push(a.clone());
        }
    }
    out
}

fn validate(command: &Command) -> Result<(), UsageError> {
    let select = match command {
        Command::Picard(a) | Command::Hitchin(a) => Some(&a.select),
        Command::Verify(a) => Some(&a.select),
        Command::FitCurve(a) => Some(&a.select),
        _ => None,
    };
    if let Some(s) = select {
        if let Some(p) = &s.params {
            if p.0.len() != 4 {
                return Err(UsageError::invalid("--params", format!("expected 4 values α,β,γ,δ, got {}", p.0.len())));
            }
        }
        if s.n == Some(0) {
            return Err(UsageError::invalid("--N", "must be nonzero"));
        }
    }
    if let Command::Eval(a) = command {
        if let Some(p) = &a.params {
            if a.func != FnName::Hyp2f1 {
                return Err(UsageError::invalid("--params", "only meaningful with --fn 2f1"));
            }
            if p.0.len() != 3 {
                return Err(UsageError::invalid("--params", format!("expected 3 values a,b,c, got {}", p.0.len())));
            }
        }
    }
    if let Command::FitCurve(a) = command {
        if a.max_deg < 2 {
            return Err(UsageError::invalid("--max-deg", "must be at least 2"));
        }
    }
    Ok(())
}
