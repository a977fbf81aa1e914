//! `magnion`: energies, equilibria, published-table comparisons, stability
//! scans and figure data for the one-electron diatomic ion in a strong
//! magnetic field.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use magnion::effective_potential::Evaluation;
use magnion::energy_surface::SurfaceConfig;
use magnion::oracle_fd::DEFAULT_POINTS;

#[derive(Debug, Parser)]
#[command(name = "magnion", version, about)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct GlobalOpts {
    /// Worker threads for scans (0: one per core).
    #[arg(long, global = true, env = "MAGNION_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Evaluate the effective potential by quadrature instead of the closed form.
    #[arg(long, global = true)]
    force_quadrature: bool,
    /// Divide every quadrature tolerance by this factor.
    #[arg(long, global = true, default_value_t = 1.0)]
    tolerance_scale: f64,
    /// Lower end of the distance scan, bohr.
    #[arg(long, global = true, default_value_t = 0.01)]
    r_min: f64,
    /// Upper end of the distance scan, bohr.
    #[arg(long, global = true, default_value_t = 5.0)]
    r_max: f64,
    /// Points of the log-spaced distance scan.
    #[arg(long, global = true, default_value_t = 40)]
    scan_points: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy and its perturbative breakdown at one geometry.
    Energy {
        /// Magnetic field, gauss.
        #[arg(long, allow_negative_numbers = true)]
        field_gauss: f64,
        /// Internuclear distance, bohr.
        #[arg(long, allow_negative_numbers = true)]
        distance: f64,
        /// Nuclear charge of each nucleus.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        charge: f64,
        /// Also solve the effective Hamiltonian by finite differences.
        #[arg(long)]
        oracle: bool,
        /// Cells of the coarse finite-difference grid.
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        fd_points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equilibrium distance and energy.
    Minimize {
        /// Magnetic field(s), gauss.
        #[arg(
            long,
            required = true,
            value_delimiter = ',',
            allow_negative_numbers = true
        )]
        field_gauss: Vec<f64>,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        charge: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute a published table and set it beside the published values.
    Table {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stability classification and critical charges.
    Stability {
        #[arg(
            long,
            required = true,
            value_delimiter = ',',
            allow_negative_numbers = true
        )]
        field_gauss: Vec<f64>,
        /// Charges to classify.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "1",
            allow_negative_numbers = true
        )]
        charge: Vec<f64>,
        /// Skip the critical-charge search.
        #[arg(long)]
        no_critical: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Data behind the binding-energy, distance and R·L figures.
    Figures {
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Melo,
    Guillou,
    Lai,
    Heyl,
    Zstudy,
}

impl GlobalOpts {
    fn surface(&self) -> Result<SurfaceConfig> {
        if !(self.tolerance_scale >= 1.0 && self.tolerance_scale.is_finite()) {
            bail!("--tolerance-scale must be a finite number ≥ 1");
        }
        if !(self.r_min > 0.0 && self.r_max > self.r_min && self.r_max.is_finite()) {
            bail!("the scan needs 0 < --r-min < --r-max");
        }
        if self.scan_points < 3 {
            bail!("--scan-points must be at least 3");
        }
        let defaults = SurfaceConfig::default();
        Ok(SurfaceConfig {
            perturbation: defaults.perturbation.tightened(self.tolerance_scale),
            evaluation: if self.force_quadrature {
                Evaluation::Quadrature
            } else {
                Evaluation::ClosedForm
            },
            scan_points: self.scan_points,
            window: (self.r_min, self.r_max),
            ..defaults
        })
    }
}

fn run(cli: Cli) -> Result<()> {
    let cfg = cli.global.surface()?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.jobs)
        .build_global()?;
    commands::run(cli.command, &cfg)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
