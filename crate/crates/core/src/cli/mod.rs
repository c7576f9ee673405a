//! Command-line front end: `xxzgeom <spectrum|evolve|scan|brachistochrone|geomphase|verify|figures>`.
//!
//! Exit codes: 0 success, 2 usage or config error, 3 I/O error, 4 domain
//! error (for example a brachistochrone without decoherence).

pub mod commands;
pub mod config;
pub mod csv;
pub mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dynamics::Method;
use crate::error::Error;
use crate::model::RateConvention;
use config::{load_config, Overrides, SweepSpec, DEFAULT_PHASE_POINTS, DEFAULT_SCAN_POINTS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;
/// `verify` found at least one failing check.
pub const EXIT_VERIFY_FAILED: i32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Io(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Analytic,
    Closed,
    Rk4,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Analytic => Method::Analytic,
            MethodArg::Closed => Method::ClosedForm,
            MethodArg::Rk4 => Method::Rk4,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConventionArg {
    Paper,
    Literal,
}

impl From<ConventionArg> for RateConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Paper => RateConvention::PaperConsistent,
            ConventionArg::Literal => RateConvention::LiteralEq6,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "xxzgeom",
    version,
    about = "Two-spin XXZ dynamics under intrinsic decoherence"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the four energies and eigenstates
    Spectrum(SpectrumArgs),
    /// Density-matrix entries along the trajectory (CSV)
    Evolve(RunArgs),
    /// Entanglement and geometry over an (alpha, eta) grid (CSV)
    Scan(RunArgs),
    /// Minimal-time report at maximal entanglement
    Brachistochrone(RunArgs),
    /// Geometric phase along the trajectory (CSV)
    Geomphase(PhaseArgs),
    /// Run every oracle check; --tol-<check> <value> overrides a tolerance
    Verify(VerifyArgs),
    /// Write the CSV data behind every figure panel
    Figures(FiguresArgs),
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long = "J", allow_hyphen_values = true)]
    pub j: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: f64,
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: f64,
}

#[derive(Debug, Args, Default, Clone)]
pub struct ParamArgs {
    #[arg(long = "J", allow_hyphen_values = true)]
    pub j: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Comma-separated noise rates
    #[arg(long, value_delimiter = ',')]
    pub alphas: Option<Vec<f64>>,
    #[arg(long)]
    pub eta_max: Option<f64>,
    /// Number of grid points
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    #[arg(long, value_enum)]
    pub convention: Option<ConventionArg>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma-separated subset of C,LHS,VHS,F,LB,VB,PHI
    #[arg(long, value_delimiter = ',')]
    pub quantities: Option<Vec<String>>,
    /// `key = value` settings file; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl ParamArgs {
    fn overrides(&self) -> Result<Overrides, CliError> {
        let quantities = match &self.quantities {
            Some(list) => Some(
                list.iter()
                    .map(|s| s.parse())
                    .collect::<Result<Vec<_>, String>>()
                    .map_err(CliError::Usage)?,
            ),
            None => None,
        };
        Ok(Overrides {
            j: self.j,
            gamma: self.gamma,
            b: self.b,
            alpha: self.alpha,
            alphas: self.alphas.clone(),
            eta_max: self.eta_max,
            n_points: self.steps,
            method: self.method.map(Into::into),
            convention: self.convention.map(Into::into),
            seed: self.seed,
            quantities,
        })
    }

    pub fn resolve(&self, default_points: usize) -> Result<SweepSpec, CliError> {
        let file = match &self.config {
            Some(path) => load_config(path)?,
            None => Overrides::default(),
        };
        SweepSpec::resolve(self.overrides()?.over(file), default_points)
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Output file; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PhaseArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Add the printed closed-form phase and its difference
    #[arg(long)]
    pub closed_form: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub convention: Option<ConventionArg>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(long, default_value = "figures")]
    pub out_dir: PathBuf,
}

/// Pulls `--tol-<check> <value>` and `--tol-<check>=<value>` out of `args`.
pub fn split_tolerances(
    args: Vec<String>,
) -> Result<(Vec<String>, BTreeMap<String, f64>), CliError> {
    let mut rest = Vec::with_capacity(args.len());
    let mut tols = BTreeMap::new();
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        let Some(spec) = a.strip_prefix("--tol-") else {
            rest.push(a);
            continue;
        };
        let (name, value) = match spec.split_once('=') {
            Some((n, v)) => (n.to_string(), v.to_string()),
            None => {
                let v = it
                    .next()
                    .ok_or_else(|| CliError::Usage(format!("--tol-{spec} needs a value")))?;
                (spec.to_string(), v)
            }
        };
        if verify::default_tolerance(&name).is_none() {
            let known: Vec<&str> = verify::CHECKS.iter().map(|c| c.0).collect();
            return Err(CliError::Usage(format!(
                "unknown check '{name}' in --tol-{name}; known checks: {}",
                known.join(", ")
            )));
        }
        let v: f64 = value
            .parse()
            .map_err(|_| CliError::Usage(format!("--tol-{name}: malformed number '{value}'")))?;
        tols.insert(name, v);
    }
    Ok((rest, tols))
}

fn init_threads() {
    if let Some(n) = std::env::var("XXZGEOM_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

fn run_command(command: Command, tols: BTreeMap<String, f64>) -> Result<i32, CliError> {
    if !tols.is_empty() && !matches!(command, Command::Verify(_)) {
        return Err(CliError::Usage(
            "--tol-<check> is only accepted by verify".into(),
        ));
    }
    match command {
        Command::Spectrum(a) => {
            commands::write_output(None, &commands::spectrum_report(a.j, a.gamma, a.b)?)?;
        }
        Command::Evolve(a) => {
            let spec = a.params.resolve(DEFAULT_SCAN_POINTS)?;
            commands::write_output(a.out.as_deref(), &commands::evolve_table(&spec)?.render())?;
        }
        Command::Scan(a) => {
            let spec = a.params.resolve(DEFAULT_SCAN_POINTS)?;
            commands::write_output(a.out.as_deref(), &commands::scan_table(&spec)?.render())?;
        }
        Command::Brachistochrone(a) => {
            let spec = a.params.resolve(DEFAULT_SCAN_POINTS)?;
            commands::write_output(
                a.out.as_deref(),
                &commands::brachistochrone_report(&spec.params_base)?,
            )?;
        }
        Command::Geomphase(a) => {
            let spec = a.params.resolve(DEFAULT_PHASE_POINTS)?;
            if spec.alphas.len() > 1 {
                return Err(CliError::Usage("geomphase takes a single alpha".into()));
            }
            commands::write_output(
                a.out.as_deref(),
                &commands::geomphase_table(&spec, a.closed_form)?.render(),
            )?;
        }
        Command::Verify(a) => {
            let opts = verify::VerifyOptions {
                convention: a.convention.map(Into::into).unwrap_or_default(),
                seed: a.seed.unwrap_or(config::DEFAULT_SEED),
                tolerances: tols,
                ..Default::default()
            };
            let report = verify::run_verify(&opts)?;
            commands::write_output(a.out.as_deref(), &report.render())?;
            if a.out.is_some() {
                print!("{}", report.checks.len());
                println!(" checks written, exit_ok = {}", report.exit_ok);
            }
            return Ok(if report.exit_ok {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            });
        }
        Command::Figures(a) => {
            let names = commands::write_figures(&a.out_dir)?;
            for n in names {
                println!("{}", Path::new(&a.out_dir).join(n).display());
            }
        }
    }
    Ok(EXIT_OK)
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I: IntoIterator<Item = String>>(args: I) -> i32 {
    let (args, tols) = match split_tolerances(args.into_iter().collect()) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    init_threads();
    match run_command(cli.command, tols) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    run(std::env::args())
}
