//! `lossgain` command line: scenario file in, CSV/JSON artifacts out.

pub mod commands;
pub mod config;
pub mod verify;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use crate::error::Error;
use crate::linalg::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Classify,
    Simulate,
    Spectrum,
    Hall,
    Susy,
    Verify,
}

#[derive(Debug, Parser)]
#[command(name = "lossgain", version, about = "Balanced loss-gain systems with Lorentz interaction")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Scenario file; the bundled default scenario when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Worker threads for parameter sweeps.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Precondition(Error),
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::CheckFailed(_) => 1,
            Self::Precondition(_) => 2,
            Self::Config(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Config(m) => write!(f, "config error: {m}"),
            Self::Precondition(e) => write!(f, "{e}"),
            Self::CheckFailed(m) => write!(f, "check failed: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Precondition(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Everything a command needs besides its own table of the scenario.
pub struct Context {
    pub out: PathBuf,
    pub jobs: usize,
    pub tol: Tolerances,
}

/// Base tolerance from `LOSSGAIN_TOL`, defaulting to `1e-10`.
pub fn tolerances_from_env() -> CliResult<Tolerances> {
    match std::env::var("LOSSGAIN_TOL") {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(Tolerances::uniform(t)),
            _ => Err(CliError::Config(format!("LOSSGAIN_TOL = {s:?} is not a positive number"))),
        },
        Err(_) => Ok(Tolerances::default()),
    }
}

pub fn run_with(cli: &Cli) -> CliResult<()> {
    let (text, origin) = match &cli.config {
        Some(path) => (
            std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?,
            path.display().to_string(),
        ),
        None => (config::DEFAULT_SCENARIO.to_string(), "default scenario".to_string()),
    };
    let cfg = config::parse(&text).map_err(|e| CliError::Config(format!("{origin}: {e}")))?;
    let ctx = Context { out: cli.out.clone(), jobs: cli.jobs.max(1), tol: tolerances_from_env()? };
    std::fs::create_dir_all(&ctx.out).map_err(|e| CliError::Config(format!("{}: {e}", ctx.out.display())))?;
    match cli.command {
        Command::Classify => commands::cmd_classify(&cfg, &ctx),
        Command::Simulate => commands::cmd_simulate(&cfg, &ctx),
        Command::Spectrum => commands::cmd_spectrum(&cfg, &ctx),
        Command::Hall => commands::cmd_hall(&cfg, &ctx),
        Command::Susy => commands::cmd_susy(&cfg, &ctx),
        Command::Verify => verify::cmd_verify(&cfg, &ctx),
    }
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match run_with(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lossgain: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Maps `f` over `items` on up to `jobs` scoped threads, keeping input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// CSV with a header row, 17 significant digits and LF endings.
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Self { text: header.join(",") + "\n" }
    }

    pub fn row(&mut self, values: &[f64]) {
        let cells: Vec<String> = values.iter().map(|v| format!("{v:.16e}")).collect();
        let _ = writeln!(self.text, "{}", cells.join(","));
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<()> {
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn write_json<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Config(e.to_string()))? + "\n";
    write_file(dir, name, &text)
}
