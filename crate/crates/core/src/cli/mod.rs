//! Command-line front end.

mod commands;
pub mod output;
pub mod scalar;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{cmd_bound, cmd_eliminate, cmd_norm, cmd_radius, cmd_reproduce, ReproduceRow};
pub use output::{format_sig, render, Field, Format, OutputRecord};
pub use scalar::Scalar;

use crate::error::Error;

/// Caps the worker threads of the norm engine; `0` or unset means automatic.
pub const THREADS_ENV: &str = "SCHWARZ_RADIUS_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERIC: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "schwarz-radius",
    version,
    about = "Pre-Schwarzian and Schwarzian norms, sharp bounds and radius constants for univalent functions"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "table")]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weighted sup-norm of T_f or S_f for a named function.
    Norm(NormArgs),
    /// Sharp bound over the univalent class.
    Bound(BoundArgs),
    /// Largest dilation radius keeping the class inside B or N.
    Radius(RadiusArgs),
    /// Exact elimination chain for the B_1(1)-radius.
    Eliminate,
    /// Recomputes every reference constant and compares.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FunctionName {
    Identity,
    Koebe,
    #[value(name = "rotated_koebe")]
    RotatedKoebe,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DerivativeName {
    #[value(name = "pre_schwarzian")]
    PreSchwarzian,
    #[value(name = "schwarzian")]
    Schwarzian,
}

#[derive(Debug, Clone, Args)]
pub struct NormArgs {
    #[arg(long = "f", value_enum)]
    pub function: FunctionName,
    #[arg(long = "d", value_enum)]
    pub derivative: DerivativeName,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Scalar,
    /// Dilation radius in [0, 1).
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<Scalar>,
    /// Rotation angle for rotated_koebe.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<Scalar>,
    /// Real Taylor coefficients a_0,a_1,a_2,... for series (a_0 = 0, a_1 = 1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Vec<Scalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    #[value(name = "pre_schwarzian")]
    PreSchwarzian,
    #[value(name = "schwarzian")]
    Schwarzian,
    #[value(name = "P")]
    P,
    #[value(name = "P_tilde")]
    PTilde,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub kind: BoundKind,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<Scalar>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Scalar,
    /// Tolerance on the maximizer of the radial majorant.
    #[arg(long, default_value = "1e-15", allow_hyphen_values = true)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassName {
    B,
    N,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RadiusMethod {
    /// Closed form or exact route where available, bisection otherwise.
    Auto,
    Bisection,
}

#[derive(Debug, Clone, Args)]
pub struct RadiusArgs {
    #[arg(long = "class", value_enum, ignore_case = true)]
    pub class: ClassName,
    #[arg(long = "M", allow_hyphen_values = true)]
    pub m: Scalar,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Scalar,
    #[arg(long, default_value = "1e-10", allow_hyphen_values = true)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: RadiusMethod,
}

#[derive(Debug, Clone, Args)]
pub struct ReproduceArgs {
    /// Test hook: offsets every computed value so the comparison fails.
    #[arg(long, hide = true)]
    pub perturb: bool,
}

/// A failed command and its exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(..) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

/// Result of running one command: rendered output and its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn thread_count(var: Option<String>) -> Result<usize, CliError> {
    match var {
        None => Ok(0),
        Some(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV}={s:?} is not a nonnegative integer"))),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, threads: Option<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let fail = |e: CliError| Outcome {
        stdout: String::new(),
        stderr: format!("error: {}\n", e.message()),
        code: e.exit_code(),
    };
    let n = match thread_count(threads) {
        Ok(n) => n,
        Err(e) => return fail(e),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
        Ok(p) => p,
        Err(e) => return fail(CliError::Numeric(format!("thread pool: {e}"))),
    };
    pool.install(|| dispatch(&cli)).unwrap_or_else(fail)
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let ok = |records: Vec<OutputRecord>| Outcome {
        stdout: render(&records, cli.format),
        stderr: String::new(),
        code: EXIT_OK,
    };
    match &cli.command {
        Command::Norm(a) => Ok(ok(vec![cmd_norm(a)?])),
        Command::Bound(a) => Ok(ok(vec![cmd_bound(a)?])),
        Command::Radius(a) => Ok(ok(vec![cmd_radius(a)?])),
        Command::Eliminate => Ok(ok(vec![cmd_eliminate()?])),
        Command::Reproduce(a) => {
            let rows = cmd_reproduce(a.perturb)?;
            let records: Vec<OutputRecord> = rows.iter().map(ReproduceRow::record).collect();
            let mut out = ok(records);
            let failed: Vec<&ReproduceRow> = rows.iter().filter(|r| !r.pass()).collect();
            if !failed.is_empty() {
                for r in failed {
                    out.stderr.push_str(&format!(
                        "error: {} off by {} (tolerance {})\n",
                        r.quantity,
                        format_sig(r.delta()),
                        format_sig(r.tolerance)
                    ));
                }
                out.code = EXIT_NUMERIC;
            }
            Ok(out)
        }
    }
}

/// Entry point of the binary: runs with the process arguments and
/// environment, writes the streams and returns the exit code.
pub fn main_entry() -> i32 {
    let outcome = run(std::env::args_os(), std::env::var(THREADS_ENV).ok());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    outcome.code
}
