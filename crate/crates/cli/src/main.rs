//! `nanoshell`: stiffness tables, torsion solutions and chirality sweeps.

mod commands;
mod config;
mod error;
mod format;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{MRange, RunConfig, Units};
use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "nanoshell",
    version,
    about = "Linear shell model of chiral carbon nanotubes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rotated stiffness tensor and plane coefficients of one chirality (JSON).
    Tensor(Options),
    /// Closed-form torsion solution of one chirality (JSON, optional field CSV).
    Torsion(Options),
    /// Torsion descriptors over a range of m (CSV, optional SVG).
    Sweep(Options),
}

#[derive(Debug, Args)]
struct Options {
    /// First chiral index.
    #[arg(long)]
    n: Option<u32>,
    /// Second chiral index: an integer or an inclusive range `a..b`.
    #[arg(long)]
    m: Option<MRange>,
    /// Configuration file (`key = value` lines, `#` comments).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (JSON for tensor/torsion, CSV for sweep); stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG chart of the sweep descriptors.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// CSV of (x1, w, a1, a2) for the torsion solution.
    #[arg(long)]
    fields: Option<PathBuf>,
    /// Check residuals and compare with the finite-difference solution.
    #[arg(long)]
    verify: bool,
    /// Replace the moduli by isotropic ones: E = E1, nu = nu21, G = E / (2 (1 + nu)).
    #[arg(long)]
    isotropic: bool,
    /// Units of E1, E2 and G.
    #[arg(long, value_parser = ["gpa", "tpa"])]
    units: Option<String>,
    /// Write the effective configuration to this file.
    #[arg(long)]
    dump_config: Option<PathBuf>,
    #[arg(long)]
    e1: Option<f64>,
    #[arg(long)]
    e2: Option<f64>,
    #[arg(long)]
    g: Option<f64>,
    #[arg(long)]
    nu12: Option<f64>,
    #[arg(long)]
    nu21: Option<f64>,
    /// Carbon-carbon bond length [nm].
    #[arg(long)]
    bond_length: Option<f64>,
    /// Shell half-thickness [nm].
    #[arg(long)]
    eps: Option<f64>,
    /// Ratio of radius to half-length.
    #[arg(long)]
    slenderness: Option<f64>,
    /// End line torque density [nN/nm].
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    /// Finite-difference nodes used by --verify (odd, >= 201).
    #[arg(long)]
    grid_points: Option<usize>,
    /// Stations in the --fields CSV.
    #[arg(long)]
    field_points: Option<usize>,
}

impl Options {
    fn into_config(self) -> Result<(RunConfig, bool, Option<PathBuf>), CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_file(path)?;
        }
        if let Some(u) = &self.units {
            cfg.units = u.parse::<Units>().map_err(CliError::Config)?;
        }
        let floats = [
            (&mut cfg.e1, self.e1),
            (&mut cfg.e2, self.e2),
            (&mut cfg.g, self.g),
            (&mut cfg.nu12, self.nu12),
            (&mut cfg.nu21, self.nu21),
            (&mut cfg.bond_length, self.bond_length),
            (&mut cfg.eps, self.eps),
            (&mut cfg.slenderness, self.slenderness),
            (&mut cfg.t, self.t),
        ];
        for (slot, v) in floats {
            if let Some(v) = v {
                *slot = v;
            }
        }
        if self.n.is_some() {
            cfg.n = self.n;
        }
        if self.m.is_some() {
            cfg.m = self.m;
        }
        if self.isotropic {
            cfg.isotropic = true;
        }
        if let Some(v) = self.grid_points {
            cfg.grid_points = v;
        }
        if let Some(v) = self.field_points {
            cfg.field_points = v;
        }
        for (slot, v) in [
            (&mut cfg.out, self.out),
            (&mut cfg.svg, self.svg),
            (&mut cfg.fields, self.fields),
        ] {
            if v.is_some() {
                *slot = v;
            }
        }
        Ok((cfg, self.verify, self.dump_config))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (kind, opts) = match cli.command {
        Command::Tensor(o) => (commands::Kind::Tensor, o),
        Command::Torsion(o) => (commands::Kind::Torsion, o),
        Command::Sweep(o) => (commands::Kind::Sweep, o),
    };
    let (cfg, verify, dump) = opts.into_config()?;
    if let Some(path) = dump {
        std::fs::write(&path, cfg.dump())?;
    }
    cfg.validate()?;
    match kind {
        commands::Kind::Tensor => commands::tensor(&cfg),
        commands::Kind::Torsion => commands::torsion(&cfg, verify),
        commands::Kind::Sweep => commands::sweep(&cfg, verify),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nanoshell: {e}");
            e.exit_code()
        }
    }
}
