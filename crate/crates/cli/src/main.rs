//! `trapped-fermi` command line: thermodynamics of a finite number of
//! spin-polarized fermions in a 3D harmonic trap.
//!
//! Exit codes: 0 success, 2 invalid input, 3 numerical failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod output;

#[derive(Parser, Debug)]
#[command(
    name = "trapped-fermi",
    version,
    about = "Thermodynamics of a finite number of spin-polarized fermions in a 3D harmonic trap",
    long_about = "Computes Fermi energy, Fermi temperature with finite-number corrections, \
                  fugacity, internal energy and specific heat for an ideal spin-polarized Fermi \
                  gas in an anisotropic harmonic trap, and validates the smooth-spectrum results \
                  against exact sums over the discrete oscillator levels.\n\n\
                  All quantities are in reduced units (hbar = k_B = 1): frequencies, energies \
                  and temperatures share one unit. Defaults can be placed in a flat key=value \
                  config file pointed at by TRAPPED_FERMI_CONFIG or --config; command-line flags \
                  override file values."
)]
pub struct Cli {
    /// Accepted for compatibility; the tool is deterministic and seed-free.
    #[arg(long, global = true)]
    pub seedless: bool,

    /// Flat key=value config file (overrides TRAPPED_FERMI_CONFIG).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default, Clone)]
pub struct CommonOpts {
    /// Trap angular frequencies "wx,wy,wz" in reduced units.
    #[arg(long, value_name = "X,Y,Z")]
    pub omega: Option<String>,

    /// Particle number; integer-valued, scientific notation accepted (e.g. 1e8).
    #[arg(long)]
    pub n: Option<f64>,

    /// Energy-zero convention: relative (energies from the ground state) or
    /// absolute (zero-point offset retained).
    #[arg(long, value_parser = ["relative", "absolute"])]
    pub mode: Option<String>,

    /// Output format.
    #[arg(long, value_parser = ["csv", "json"])]
    pub format: Option<String>,

    /// Output file (fig1: output directory). Default: stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Use the quadratic zero-point variant of the effective particle number
    /// in the Fermi-energy cubic (comparison runs).
    #[arg(long)]
    pub nprime_literal: bool,
}

#[derive(Args, Debug, Default, Clone)]
pub struct GridOpts {
    /// Single temperature (reduced units).
    #[arg(long)]
    pub t: Option<f64>,

    /// Sweep start temperature.
    #[arg(long)]
    pub t_min: Option<f64>,

    /// Sweep end temperature.
    #[arg(long)]
    pub t_max: Option<f64>,

    /// Number of grid points.
    #[arg(long)]
    pub t_points: Option<usize>,

    /// Grid spacing.
    #[arg(long, value_parser = ["linear", "log"])]
    pub t_scale: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print partition-expansion and level-density coefficients plus the
    /// Fermi-energy cubic classification.
    Coeffs {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Solve one temperature point (fugacity, chemical potential, energy,
    /// specific heat).
    Point {
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        grid: GridOpts,
    },
    /// Sweep a temperature grid and emit the table.
    Sweep {
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        grid: GridOpts,
    },
    /// Emit the two-dataset specific-heat comparison (small vs large N) on a
    /// shared T/T_F0 grid, plus a joined comparison table.
    Fig1 {
        #[command(flatten)]
        common: CommonOpts,
        /// Number of grid points (alias for --t-points).
        #[arg(long)]
        points: Option<usize>,
        /// Grid bounds in units of T/T_F0 (defaults 0.02 and 20).
        #[command(flatten)]
        grid: GridOpts,
        /// Smaller particle number (default 1e8).
        #[arg(long)]
        n_small: Option<f64>,
        /// Larger particle number (default 1e23).
        #[arg(long)]
        n_large: Option<f64>,
    },
    /// Fermi temperature with its finite-number correction.
    FermiTemp {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Compare continuum thermodynamics against exact discrete-spectrum sums
    /// (guarded to N <= 1e6).
    OracleCompare {
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        grid: GridOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
