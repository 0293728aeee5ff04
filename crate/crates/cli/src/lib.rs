//! Front end for `ratquad`: generate rule files, run the bundled examples
//! against classical Gauss quadrature, and regenerate reference tables.
//!
//! Exit codes: 0 on success, 2 for invalid input, 3 for numerical failure.
//! Failures print an [`schema::ErrorDoc`] on standard error.

pub mod schema;
pub mod tables;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ratquad::examples::{self, ExampleName, Params};
use ratquad::measures::BaseMeasure;
use ratquad::modify::{DivisionStrategy, ModifyOptions};
use ratquad::parallel::Execution;
use ratquad::partfrac::PoleSet;
use ratquad::ratgauss::{build_disc, build_pf, BuildOptions, RationalRule};
use serde::Serialize;

use schema::{ErrorBody, ErrorDoc, RuleDoc};

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ratquad", version, about = "Rational Gauss quadrature rules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a rule and write it as JSON.
    Generate(GenerateArgs),
    /// Evaluate one of the bundled integrals and compare with classical Gauss.
    Example(ExampleArgs),
    /// Regenerate a reference table.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Pf,
    Disc,
    /// `pf`, falling back to `disc` when the partial-fraction route fails.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Legendre,
    Laguerre,
    Jacobi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Moments,
    Ratios,
}

/// Options shared by every command that builds rules.
#[derive(Debug, Clone, Args)]
pub struct BuildArgs {
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    /// Also compute the error constant γ_n.
    #[arg(long)]
    pub gamma: bool,
    /// How measures are divided by linear and quadratic factors.
    #[arg(long, value_enum, default_value = "moments")]
    pub strategy: StrategyArg,
    /// Tolerance of the discretization sweep.
    #[arg(long, default_value_t = ratquad::ratgauss::DEFAULT_DISC_TOL)]
    pub disc_tol: f64,
    /// Largest discretization size.
    #[arg(long, default_value_t = ratquad::ratgauss::DEFAULT_DISC_MAX_POINTS)]
    pub disc_max_points: usize,
    /// Run on the calling thread only.
    #[arg(long)]
    pub sequential: bool,
}

impl BuildArgs {
    pub fn options(&self) -> BuildOptions {
        BuildOptions {
            want_gamma: self.gamma,
            modify: ModifyOptions {
                strategy: match self.strategy {
                    StrategyArg::Moments => DivisionStrategy::Moments,
                    StrategyArg::Ratios => DivisionStrategy::Ratios,
                },
                ..ModifyOptions::default()
            },
            execution: self.execution(),
            disc_tol: self.disc_tol,
            disc_max_points: self.disc_max_points,
        }
    }

    pub fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }
}

/// Example parameters.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// ω for i1, i2 and i3.
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// η for i5.
    #[arg(long, allow_negative_numbers = true)]
    pub eta: Option<f64>,
}

impl ParamArgs {
    pub fn params(&self) -> Params {
        Params {
            omega: self.omega,
            eta: self.eta,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    /// Base measure; defaults to the preset's measure.
    #[arg(long, value_enum)]
    pub measure: Option<MeasureArg>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub jacobi_a: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub jacobi_b: f64,
    /// Map a Legendre or Jacobi measure to `[LO, HI]`.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub interval: Option<Vec<f64>>,
    /// Pole preset i1..i6.
    #[arg(long, conflicts_with = "poles")]
    pub preset: Option<String>,
    /// JSON list of `{zeta_re, zeta_im, multiplicity}`.
    #[arg(long)]
    pub poles: Option<PathBuf>,
    /// Append missing complex conjugates to the pole file entries.
    #[arg(long)]
    pub conjugates: bool,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub n: usize,
    /// Degree of the pole set; defaults to the pole file's degree.
    #[arg(long)]
    pub m: Option<usize>,
    #[command(flatten)]
    pub build: BuildArgs,
    /// Write the rule here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ExampleArgs {
    /// Example i1..i6.
    #[arg(long)]
    pub name: String,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub n: usize,
    /// Defaults to 2n (2n-1 for i5, a multiple of 4 for i6).
    #[arg(long)]
    pub m: Option<usize>,
    #[command(flatten)]
    pub build: BuildArgs,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// One of 3.2, 3.7, 3.8, 3.9, 3.10.
    #[arg(long)]
    pub id: String,
    #[command(flatten)]
    pub build: BuildArgs,
    #[arg(long)]
    pub json: bool,
}

/// A failure with its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub exit_code: i32,
    pub kind: String,
    pub message: String,
    pub hint: Option<String>,
}

impl CliError {
    pub fn validation(kind: &str, message: impl Into<String>) -> Self {
        Self {
            exit_code: EXIT_VALIDATION,
            kind: kind.to_string(),
            message: message.into(),
            hint: None,
        }
    }

    pub fn to_doc(&self) -> ErrorDoc {
        ErrorDoc {
            error: ErrorBody {
                kind: self.kind.clone(),
                message: self.message.clone(),
                hint: self.hint.clone(),
                exit_code: self.exit_code,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("error documents always serialize")
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for CliError {}

impl From<ratquad::Error> for CliError {
    fn from(e: ratquad::Error) -> Self {
        let hint = match &e {
            ratquad::Error::UnsupportedCase(_) => Some("use disc".to_string()),
            ratquad::Error::NonPositiveBeta { .. } => Some("lower m or use disc".to_string()),
            ratquad::Error::ConvergenceFailure { what: "discretization", .. } => {
                Some("raise --disc-max-points or try pf".to_string())
            }
            _ => None,
        };
        Self {
            exit_code: if e.is_validation() { EXIT_VALIDATION } else { EXIT_NUMERICAL },
            kind: e.kind().to_string(),
            message: e.to_string(),
            hint,
        }
    }
}

fn io_error(e: std::io::Error) -> CliError {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        return CliError::validation(BROKEN_PIPE, e.to_string());
    }
    CliError::validation("OutputError", e.to_string())
}

/// Kind of the error raised when the reader of standard output goes away.
pub const BROKEN_PIPE: &str = "BrokenPipe";

/// A built rule and, for `auto`, why the first method was abandoned.
#[derive(Debug, Clone)]
pub struct Built {
    pub rule: RationalRule,
    pub fallback_reason: Option<String>,
}

/// Builds with the requested method. `auto` runs `pf` first and switches to
/// `disc` on a non-positive β or an unsupported pole configuration; the
/// reason is kept in [`Built::fallback_reason`].
pub fn build(
    measure: &BaseMeasure,
    poles: &PoleSet,
    n: usize,
    m: usize,
    method: MethodArg,
    opts: &BuildOptions,
) -> ratquad::Result<Built> {
    let done = |rule| Built {
        rule,
        fallback_reason: None,
    };
    match method {
        MethodArg::Pf => build_pf(measure, poles, n, m, opts).map(done),
        MethodArg::Disc => build_disc(measure, poles, n, m, opts).map(done),
        MethodArg::Auto if poles.is_empty() => build_disc(measure, poles, n, m, opts).map(|rule| Built {
            rule,
            fallback_reason: Some("empty pole set".to_string()),
        }),
        MethodArg::Auto => match build_pf(measure, poles, n, m, opts) {
            Ok(rule) => Ok(done(rule)),
            Err(e @ (ratquad::Error::NonPositiveBeta { .. } | ratquad::Error::UnsupportedCase(_))) => {
                build_disc(measure, poles, n, m, opts).map(|rule| Built {
                    rule,
                    fallback_reason: Some(e.to_string()),
                })
            }
            Err(e) => Err(e),
        },
    }
}

fn parse_example(name: &str) -> Result<ExampleName, CliError> {
    name.parse::<ExampleName>().map_err(CliError::from)
}

fn generate_measure(args: &GenerateArgs) -> Result<BaseMeasure, CliError> {
    let preset_measure = match &args.preset {
        Some(p) => Some(examples::spec(parse_example(p)?, args.params.params())?.measure),
        None => None,
    };
    let base = match (args.measure, preset_measure) {
        (Some(MeasureArg::Legendre), _) => BaseMeasure::legendre(),
        (Some(MeasureArg::Laguerre), _) => BaseMeasure::laguerre(),
        (Some(MeasureArg::Jacobi), _) => BaseMeasure::jacobi(args.jacobi_a, args.jacobi_b)?,
        (None, Some(m)) => m,
        (None, None) => return Err(CliError::validation("InvalidInput", "--measure is required without --preset")),
    };
    match &args.interval {
        Some(iv) => Ok(base.on_interval(iv[0], iv[1])?),
        None => Ok(base),
    }
}

fn generate_poles(args: &GenerateArgs) -> Result<PoleSet, CliError> {
    match (&args.preset, &args.poles) {
        (Some(p), None) => {
            let name = parse_example(p)?;
            let m = args
                .m
                .ok_or_else(|| CliError::validation("InvalidInput", "--m is required with --preset"))?;
            Ok(examples::pole_preset(name, args.params.params(), m)?)
        }
        (None, Some(path)) => schema::parse_poles(&schema::read(path)?, args.conjugates),
        (None, None) => Ok(PoleSet::empty()),
        (Some(_), Some(_)) => Err(CliError::validation("InvalidInput", "use either --preset or --poles")),
    }
}

/// `generate`: returns the rule document.
pub fn generate(args: &GenerateArgs) -> Result<RuleDoc, CliError> {
    let measure = generate_measure(args)?;
    let poles = generate_poles(args)?;
    let m = args.m.unwrap_or(poles.m());
    let built = build(&measure, &poles, args.n, m, args.build.method, &args.build.options())?;
    Ok(RuleDoc::new(&measure, &built.rule, built.fallback_reason))
}

/// Result of `example`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExampleReport {
    pub name: String,
    pub omega: Option<f64>,
    pub eta: Option<f64>,
    pub n: usize,
    pub m: usize,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fallback_reason: Option<String>,
    pub case: Option<String>,
    pub value: f64,
    pub reference: Option<f64>,
    pub reference_text: Option<String>,
    pub relative_error: Option<f64>,
    pub gauss_value: f64,
    pub gauss_relative_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_n: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discretization_points: Option<usize>,
}

/// Default degree of the preset for an `n`-point rule.
pub fn default_m(name: ExampleName, n: usize) -> usize {
    match name {
        ExampleName::I5 => 2 * n - 1,
        ExampleName::I6 => 4 * (n / 2),
        _ => 2 * n,
    }
}

/// Builds and evaluates one example.
pub fn run_example(
    name: ExampleName,
    params: Params,
    n: usize,
    m: Option<usize>,
    build_args: &BuildArgs,
) -> Result<ExampleReport, CliError> {
    if n == 0 {
        return Err(CliError::validation("InvalidInput", "n must be at least 1"));
    }
    let spec = examples::spec(name, params)?;
    let m = m.unwrap_or_else(|| default_m(name, n));
    let poles = spec.poles(m)?;
    let built = build(&spec.measure, &poles, n, m, build_args.method, &build_args.options())?;
    let value = built.rule.integrate(|t| spec.integrand(t))?;
    let gauss_value = spec.measure.gauss_rule(n)?.apply(|t| spec.integrand(t))?;
    let reference = spec.reference().ok();
    let rel = |v: f64| reference.map(|r| ((v - r.value) / r.value).abs());
    Ok(ExampleReport {
        name: name.to_string(),
        omega: params.omega,
        eta: params.eta,
        n,
        m,
        method: built.rule.method().name().to_string(),
        fallback_reason: built.fallback_reason,
        case: built.rule.case().map(|c| c.name().to_string()),
        value,
        reference: reference.map(|r| r.value),
        reference_text: reference.map(|r| r.text.to_string()),
        relative_error: rel(value),
        gauss_value,
        gauss_relative_error: rel(gauss_value),
        gamma_n: built.rule.gamma_n(),
        discretization_points: built.rule.discretization_points(),
    })
}

fn sci(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.3e}"))
}

impl fmt::Display for ExampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let param = match (self.omega, self.eta) {
            (Some(w), _) => format!(" omega={w}"),
            (_, Some(e)) => format!(" eta={e}"),
            _ => String::new(),
        };
        writeln!(f, "example    {}{param}  n={} m={}", self.name, self.n, self.m)?;
        write!(f, "method     {}", self.method)?;
        if let Some(c) = &self.case {
            write!(f, " ({c})")?;
        }
        if let Some(r) = &self.fallback_reason {
            write!(f, " after fallback: {r}")?;
        }
        writeln!(f)?;
        writeln!(f, "rational   {:<24.17e} rel err {}", self.value, sci(self.relative_error))?;
        writeln!(f, "gauss      {:<24.17e} rel err {}", self.gauss_value, sci(self.gauss_relative_error))?;
        if let Some(r) = &self.reference_text {
            writeln!(f, "reference  {r}")?;
        }
        if let Some(g) = self.gamma_n {
            writeln!(f, "gamma_n    {g:.3e}")?;
        }
        if let Some(size) = self.discretization_points {
            writeln!(f, "N          {size}")?;
        }
        Ok(())
    }
}

/// Runs a parsed command, writing its output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Generate(args) => {
            let doc = generate(args)?;
            let text = doc.to_json();
            match &args.output {
                Some(path) => std::fs::write(path, text + "\n").map_err(io_error),
                None => writeln!(out, "{text}").map_err(io_error),
            }
        }
        Command::Example(args) => {
            let report = run_example(parse_example(&args.name)?, args.params.params(), args.n, args.m, &args.build)?;
            if args.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes")).map_err(io_error)
            } else {
                write!(out, "{report}").map_err(io_error)
            }
        }
        Command::Table(args) => {
            let table = tables::generate(&args.id, &args.build)?;
            if args.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&table).expect("table serializes")).map_err(io_error)
            } else {
                write!(out, "{table}").map_err(io_error)
            }
        }
    }
}
