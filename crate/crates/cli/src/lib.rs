//! Command-line front end for the dipcoh simulator.
//!
//! Every subcommand writes a CSV table preceded by a `#` comment block that
//! echoes the resolved configuration. Exit codes: 0 success, 1 computational
//! failure or poisoned sweep rows, 2 usage error.

#![allow(clippy::needless_range_loop)]

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use dipcoh_core::{parse_real, Axis, Parameter};

use config::{config_path, load_config_file, Observable, Overrides, RunConfig};
use error::CliError;

pub use table::{fmt_real, read_table, Table};

fn real_arg(s: &str) -> Result<f64, String> {
    parse_real(s).ok_or_else(|| format!("`{s}` is not a number or pi fraction"))
}

#[derive(Debug, Parser)]
#[command(
    name = "dipcoh",
    version,
    about = "Two-qubit Heisenberg XXX chain with dipole coupling under intrinsic decoherence"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form and numeric eigenvalues side by side.
    Eigen(CommonArgs),
    /// Coherence and density matrix over a time grid.
    Evolve(CommonArgs),
    /// Stationary state, C and C².
    Steady(CommonArgs),
    /// Steady-state coherence over a parameter grid.
    Sweep(CommonArgs),
    /// Finite-difference derivative of the steady-state C².
    Derivative(CommonArgs),
}

#[derive(Debug, Clone, Default, Args)]
#[command(allow_negative_numbers = true)]
pub struct CommonArgs {
    /// Exchange coupling J.
    #[arg(long = "J", value_parser = real_arg)]
    pub j: Option<f64>,
    /// Dipole strength D (>= 0).
    #[arg(long = "D", value_parser = real_arg)]
    pub d: Option<f64>,
    /// Qubit separation r (> 0).
    #[arg(long = "r", value_parser = real_arg)]
    pub r: Option<f64>,
    /// Longitudinal field Bz.
    #[arg(long = "Bz", value_parser = real_arg)]
    pub bz: Option<f64>,
    /// Intrinsic decoherence rate (>= 0).
    #[arg(long, value_parser = real_arg)]
    pub gamma: Option<f64>,
    /// Initial-state mixing angle in [0, pi]; accepts `pi/N`.
    #[arg(long, value_parser = real_arg)]
    pub alpha: Option<f64>,
    /// End of the time grid.
    #[arg(long = "t-max", value_parser = real_arg)]
    pub t_max: Option<f64>,
    /// Number of time intervals; the grid has t-steps + 1 points.
    #[arg(long = "t-steps")]
    pub t_steps: Option<usize>,
    /// Outer sweep axis, `param:min:max:count` or `param:value`.
    #[arg(long, value_parser = str::parse::<Axis>)]
    pub axis1: Option<Axis>,
    /// Inner sweep axis.
    #[arg(long, value_parser = str::parse::<Axis>)]
    pub axis2: Option<Axis>,
    /// Derivative target: D, r, Bz or alpha.
    #[arg(long, value_parser = str::parse::<Parameter>)]
    pub derivative: Option<Parameter>,
    /// Relative finite-difference step.
    #[arg(long = "fd-step", value_parser = real_arg)]
    pub fd_step: Option<f64>,
    /// Extra evolve columns (comma separated): purity.
    #[arg(long, value_delimiter = ',', value_parser = str::parse::<Observable>)]
    pub observables: Vec<Observable>,
    /// Config file of `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output file (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl CommonArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            j: self.j,
            d: self.d,
            r: self.r,
            bz: self.bz,
            gamma: self.gamma,
            alpha: self.alpha,
            t_max: self.t_max,
            t_steps: self.t_steps,
            axis1: self.axis1,
            axis2: self.axis2,
            derivative: self.derivative,
            fd_step: self.fd_step,
            observables: (!self.observables.is_empty()).then(|| self.observables.clone()),
        }
    }

    /// Defaults, then the config file, then flags.
    pub fn resolve(&self, env_config: Option<OsString>) -> Result<RunConfig, CliError> {
        let file = match config_path(self.config.as_deref(), env_config) {
            Some(path) => load_config_file(&path)?,
            None => Overrides::default(),
        };
        RunConfig::resolve(file.overlay(self.overrides()))
    }
}

fn execute(
    cli: &Cli,
    env_config: Option<OsString>,
    stdout: &mut dyn Write,
) -> Result<bool, CliError> {
    let (name, args) = match &cli.command {
        Command::Eigen(a) => ("eigen", a),
        Command::Evolve(a) => ("evolve", a),
        Command::Steady(a) => ("steady", a),
        Command::Sweep(a) => ("sweep", a),
        Command::Derivative(a) => ("derivative", a),
    };
    let cfg = args.resolve(env_config)?;
    // Buffer the whole table so a failed run never leaves a half-written file.
    let mut buf = Vec::new();
    let ok = match name {
        "eigen" => commands::cmd_eigen(&cfg, &mut buf)?,
        "evolve" => commands::cmd_evolve(&cfg, &mut buf)?,
        "steady" => commands::cmd_steady(&cfg, &mut buf)?,
        "sweep" => commands::cmd_sweep(&cfg, &mut buf)?,
        _ => commands::cmd_derivative(&cfg, &mut buf)?,
    };
    match &args.out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            f.write_all(&buf)?;
            f.flush()?;
        }
        None => {
            stdout.write_all(&buf)?;
            stdout.flush()?;
        }
    }
    Ok(ok)
}

/// Parses `argv`, runs the command and returns the process exit code.
///
/// `env_config` is the value of `DIPCOH_CONFIG`, passed in so callers control
/// the environment.
pub fn run<I, T>(
    argv: I,
    env_config: Option<OsString>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return u8::try_from(code).unwrap_or(2);
        }
    };
    match execute(&cli, env_config, stdout) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "dipcoh: {e}");
            e.exit_code()
        }
    }
}
