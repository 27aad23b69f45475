//! Command-line front end for the point-interaction Laplacian library:
//! parameter tables, resolvent and wave field files, spectral summaries,
//! closure diagnostics, and the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or config
//! error. Output is deterministic: identical configs produce
//! byte-identical files (no timestamps, fixed float rendering, ordered
//! parallel collection).

mod commands;
mod config;
mod output;
mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::{CliError, RunConfig};
use output::Sink;
use pointlab::quad::QuadratureSpec;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "pointlab",
    version,
    about = "Self-adjoint extensions of the 3-D Laplacian with a point interaction: \
             kernels, spectra, wave propagation, and verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON run configuration
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Write the primary output to this file instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Quadrature accuracy preset
    #[arg(long, value_enum, default_value = "default")]
    quadrature_preset: Preset,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Fast,
    Default,
    Strict,
}

impl Preset {
    fn spec(self) -> QuadratureSpec {
        match self {
            Preset::Fast => QuadratureSpec::fast(),
            Preset::Default => QuadratureSpec::default_spec(),
            Preset::Strict => QuadratureSpec::strict(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// θ ↔ μ parameter tables over a grid or a single value
    Parametrize(Common),
    /// Resolvent kernel over a spatial grid for fixed (μ, λ, y)
    Resolvent(Common),
    /// Spectral summary: eigenvalue, norm, coupling pole
    Spectrum(Common),
    /// Wave snapshots u(t, ·) with causality and rate summaries
    Wave(Common),
    /// Run verification suites and emit a JSON report
    Verify(Common),
    /// Graph-norm cutoff integrals and norm sweeps
    Closure(Common),
}

/// POINTLAB_THREADS caps rayon's parallelism; unset means rayon's
/// default. Parallel grid evaluation preserves row order either way.
fn init_threads() -> Result<(), CliError> {
    match std::env::var("POINTLAB_THREADS") {
        Err(_) => Ok(()),
        Ok(v) => {
            let n: usize = v.parse().map_err(|_| {
                CliError::Usage(format!("POINTLAB_THREADS must be a positive integer, got {v:?}"))
            })?;
            if n == 0 {
                return Err(CliError::Usage(
                    "POINTLAB_THREADS must be a positive integer, got 0".into(),
                ));
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::Usage(format!("cannot build thread pool: {e}")))
        }
    }
}

fn run(command: &Command) -> Result<ExitCode, CliError> {
    init_threads()?;
    let common = match command {
        Command::Parametrize(c)
        | Command::Resolvent(c)
        | Command::Spectrum(c)
        | Command::Wave(c)
        | Command::Verify(c)
        | Command::Closure(c) => c,
    };
    let cfg = RunConfig::load(&common.config)?;
    let sink = Sink::new(common.out.as_deref());
    let spec = common.quadrature_preset.spec();
    match command {
        Command::Parametrize(_) => commands::cmd_parametrize(&cfg, &sink, &spec)?,
        Command::Resolvent(_) => commands::cmd_resolvent(&cfg, &sink, &spec)?,
        Command::Spectrum(_) => commands::cmd_spectrum(&cfg, &sink, &spec)?,
        Command::Wave(_) => commands::cmd_wave(&cfg, &sink, &spec)?,
        Command::Closure(_) => commands::cmd_closure(&cfg, &sink, &spec)?,
        Command::Verify(_) => return verify::cmd_verify(&cfg, &sink, &spec),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
