//! Command-line front end for `zuslab`.
//!
//! Every subcommand reads JSON inputs (or built-in fixtures), runs one
//! analysis and writes a JSON report. Exit codes are listed in
//! [`error::exit`].

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use zuslab::Tolerances;

mod commands;
pub mod error;
pub mod io;
pub mod report;

pub use commands::execute;
pub use error::{exit, CliError};
pub use report::Report;

#[derive(Debug, Parser)]
#[command(
    name = "zuslab",
    version,
    about = "Zero-uncertainty states and transition graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    args: CommonArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Transition graph and its connected components.
    Graph,
    /// Zero-uncertainty test with the component vector.
    Zus,
    /// Maximal-entanglement classification.
    Mes,
    /// Verification-operator and Gram spectra with the degeneracy certificate.
    Spectrum,
    /// Optimal guessing probability for every basis.
    Game,
    /// Steering assemblage test.
    Steer,
    /// Entropic uncertainty relations with and without memory.
    Audit,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Graph => "graph",
            Command::Zus => "zus",
            Command::Mes => "mes",
            Command::Spectrum => "spectrum",
            Command::Game => "game",
            Command::Steer => "steer",
            Command::Audit => "audit",
        }
    }
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("{s:?} is not a positive number")),
    }
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Bipartite state: JSON file, `fixture:bell` or `fixture:mes:DA:DB`.
    #[arg(long, global = true)]
    state: Option<String>,
    /// Basis set: JSON file, `fixture:pauli`, `fixture:fourier:D`,
    /// `fixture:computational:D` or `fixture:haar:D:M`.
    #[arg(long, global = true)]
    bases: Option<String>,
    /// POVM file with one measurement per basis.
    #[arg(long, global = true)]
    povm: Option<String>,
    /// Seed for random fixtures.
    #[arg(long, global = true, env = "ZUSLAB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_parser = positive, default_value_t = Tolerances::default().adj_tol)]
    tol_adj: f64,
    #[arg(long, global = true, value_parser = positive, default_value_t = Tolerances::default().spec_tol)]
    tol_spec: f64,
    #[arg(long, global = true, value_parser = positive, default_value_t = Tolerances::default().certify_tol)]
    tol_certify: f64,
    #[arg(long, global = true, value_parser = positive, default_value_t = Tolerances::default().zus_tol)]
    tol_zus: f64,
    /// Report path; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// CSV of (index, value) pairs, for `spectrum` and `game`.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
}

/// One fully resolved invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub command: Command,
    pub state: Option<String>,
    pub bases: Option<String>,
    pub povm: Option<String>,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            state: None,
            bases: None,
            povm: None,
            seed: 0,
            tolerances: Tolerances::default(),
            out: None,
            csv: None,
        }
    }
}

impl From<Cli> for JobSpec {
    fn from(cli: Cli) -> Self {
        let a = cli.args;
        Self {
            command: cli.command,
            state: a.state,
            bases: a.bases,
            povm: a.povm,
            seed: a.seed,
            tolerances: Tolerances {
                adj_tol: a.tol_adj,
                spec_tol: a.tol_spec,
                certify_tol: a.tol_certify,
                zus_tol: a.tol_zus,
            },
            out: a.out,
            csv: a.csv,
        }
    }
}

fn run_job(job: &JobSpec) -> Result<(), CliError> {
    if job.csv.is_some() && !matches!(job.command, Command::Spectrum | Command::Game) {
        return Err(CliError::Usage(format!(
            "--csv is only available for spectrum and game, not {}",
            job.command.name()
        )));
    }
    let report = execute(job)?;
    let json = report.to_json();
    match &job.out {
        Some(path) => report::write_file(path, &json)?,
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{json}").map_err(|source| CliError::Write {
                path: "<stdout>".into(),
                source,
            })?;
        }
    }
    if let (Some(path), Some(csv)) = (&job.csv, report.to_csv()) {
        report::write_file(path, &csv)?;
    }
    Ok(())
}

/// Parses `args` (program name first), runs the job and returns the exit
/// code. Errors go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                exit::INVALID_INPUT
            } else {
                exit::OK
            };
        }
    };
    match run_job(&cli.into()) {
        Ok(()) => exit::OK,
        Err(e) => {
            eprintln!("zuslab: {e}");
            e.exit_code()
        }
    }
}
