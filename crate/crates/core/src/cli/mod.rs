//! The `qgk` command line.
//!
//! Exit status is 0 on success, 1 for invalid input or a failed check, and 2
//! when the numerics broke down (non-finite state, unconverged quadrature).

mod commands;
mod config;
mod manifest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{parse_config, parse_config_str, ParsedConfig};
pub use manifest::ExperimentManifest;

use crate::error::Error;

#[derive(Parser, Debug)]
#[command(
    name = "qgk",
    version,
    about = "Pseudo-spectral lab for the higher-order viscous QG equation"
)]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate the nonlinear equation.
    Run(RunArgs),
    /// Evaluate the exact linear solution on the diagnostics cadence.
    Linear(RunArgs),
    /// Radial decay moments of the linear flow on the whole plane.
    Decay(DecayArgs),
    /// H³ distance between two runs that share their snapshot times.
    Compare(CompareArgs),
    /// Twin runs differing by a perturbation of the initial state.
    Stability(StabilityArgs),
    /// Property battery on a config; exits 1 if any check fails.
    Invariants(ConfigArg),
    /// Balance residuals under dt refinement and the fitted order.
    Convergence(ConvergenceArgs),
    /// Littlewood–Paley block energies of a snapshot.
    LpSpectrum(LpArgs),
}

#[derive(Args, Debug)]
struct ConfigArg {
    #[arg(long)]
    config: PathBuf,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output directory, created if needed.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct DecayArgs {
    /// `gaussian:<width>` or `indicator:<radius>`.
    #[arg(long)]
    profile: String,
    #[arg(long)]
    mu: f64,
    #[arg(long, value_delimiter = ',', default_value = "0,1,3")]
    moments: Vec<u32>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 1e2)]
    t_min: f64,
    #[arg(long, default_value_t = 1e6)]
    t_max: f64,
    #[arg(long, default_value_t = 32)]
    samples: usize,
    /// Adds Duhamel moments for forcing `K(1+t)^{-1-η}` with this `η`.
    #[arg(long)]
    eta: Option<f64>,
    /// Forcing amplitude `K` for the Duhamel columns.
    #[arg(long, default_value_t = 1.0)]
    amplitude: f64,
    /// Forcing profile for the Duhamel columns; defaults to `--profile`.
    #[arg(long)]
    forcing_profile: Option<String>,
}

#[derive(Args, Debug)]
struct CompareArgs {
    /// Output directory (or its series.csv) of the nonlinear run.
    #[arg(long)]
    run_a: PathBuf,
    /// Output directory (or its series.csv) of the linear run.
    #[arg(long)]
    run_b: PathBuf,
    #[arg(long)]
    eta: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct StabilityArgs {
    #[arg(long)]
    config: PathBuf,
    /// Snapshot holding `δr₀`.
    #[arg(long)]
    perturb: PathBuf,
    /// Factor applied to the perturbation snapshot.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct ConvergenceArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    dts: Vec<f64>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LpArgs {
    /// Snapshot to analyse.
    #[arg(long)]
    input: PathBuf,
    /// Regularity index of the weighted column.
    #[arg(long, default_value_t = 0.0)]
    s: f64,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Outcome of a command that ran to completion.
pub(crate) enum Status {
    Ok,
    /// Ran, but a check did not hold.
    Failed,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NumericalAbort { .. } | Error::NonFinite(_) | Error::Quadrature { .. } => 2,
        _ => 1,
    }
}

fn configure_threads(err: &mut dyn Write) {
    let Ok(v) = std::env::var("QGK_THREADS") else {
        return;
    };
    match v.trim().parse::<usize>() {
        Ok(0) => {}
        Ok(n) => {
            // a second call in one process fails harmlessly
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        Err(_) => {
            let _ = writeln!(err, "warning: ignoring QGK_THREADS={v}");
        }
    }
}

/// Runs the command line `args` (including the program name) and returns the
/// exit code.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    configure_threads(err);
    let result = match cli.command {
        Command::Run(a) => commands::run(&a.config, &a.out, true, out),
        Command::Linear(a) => commands::run(&a.config, &a.out, false, out),
        Command::Decay(a) => commands::decay(&a, out),
        Command::Compare(a) => commands::compare(&a, out),
        Command::Stability(a) => commands::stability(&a, out),
        Command::Invariants(a) => commands::invariants(&a.config, out),
        Command::Convergence(a) => commands::convergence(&a, out),
        Command::LpSpectrum(a) => commands::lp_spectrum(&a, out),
    };
    match result {
        Ok(Status::Ok) => 0,
        Ok(Status::Failed) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
