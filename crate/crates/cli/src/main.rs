//! `elastinet` command-line tool.
//!
//! Exit codes: 0 success, 2 unreadable input or bad flags, 3 invalid
//! network or unmet precondition, 4 minimization failure.

mod commands;
mod failure;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{path_arg, Shape, ShapeParams};
use failure::Failure;

#[derive(Parser)]
#[command(name = "elastinet", version, about = "Elastic energy of planar curve networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check junction positions and angles of a network file.
    Validate { input: PathBuf },
    /// Bending, length and penalized energy per curve.
    Energy {
        input: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long)]
        json: bool,
    },
    /// Gauss-Bonnet, drop, pair, theta and Cauchy-Schwarz bounds.
    Bounds {
        input: PathBuf,
        /// Treat vertices of a closed curve turning by more than this many
        /// radians as corners.
        #[arg(long)]
        corner_threshold: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Minimize F; writes result, trace, SVGs and a manifest to `--out`.
    Minimize {
        input: PathBuf,
        /// OptimizationConfig as JSON; missing fields take defaults.
        #[arg(long = "kind-config", alias = "config")]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Keep a double drop point-symmetric.
        #[arg(long)]
        symmetric: bool,
    },
    /// Construct a reference network.
    Reference {
        #[arg(long, value_enum)]
        shape: Shape,
        #[command(flatten)]
        params: ShapeParams,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Theta-network approximating a degenerate one with segments of length 1/n.
    Recovery {
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generalized bubble energies over a grid of angles.
    Sweep {
        /// Comma-separated angles or `start:stop:count` ranges.
        #[arg(long, allow_hyphen_values = true)]
        alpha1_grid: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha2_grid: String,
        /// Grid values are in degrees.
        #[arg(long)]
        degrees: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { input } => commands::validate(&input),
        Command::Energy { input, alpha, json } => commands::energy_report(&input, alpha, json),
        Command::Bounds {
            input,
            corner_threshold,
            json,
        } => commands::bounds(&input, corner_threshold, json),
        Command::Minimize {
            input,
            config,
            out,
            symmetric,
        } => commands::minimize_cmd(&input, path_arg(&config), &out, symmetric),
        Command::Reference { shape, params, out } => commands::reference(shape, &params, path_arg(&out)),
        Command::Recovery { input, n, out } => commands::recovery(&input, n, path_arg(&out)),
        Command::Sweep {
            alpha1_grid,
            alpha2_grid,
            degrees,
            out,
        } => commands::sweep(&alpha1_grid, &alpha2_grid, degrees, path_arg(&out)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            f.exit_code()
        }
    }
}
