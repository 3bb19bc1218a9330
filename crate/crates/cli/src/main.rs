//! `geodesy`: verify, construct and enumerate geodesics from the command
//! line.
//!
//! Exit codes: 0 when the check passes, 1 when it fails mathematically,
//! 2 on any usage or input error.

mod commands;
mod io;
mod laakso;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use geodesy::GeodesyError;

use io::Format;

#[derive(Parser)]
#[command(
    name = "geodesy",
    version,
    about = "Construct, verify and enumerate minimising geodesics"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by all commands.
#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Space descriptor: a path or inline JSON
    #[arg(long, global = true)]
    pub space: Option<String>,
    /// Curve document: a path or inline JSON
    #[arg(long, global = true)]
    pub curve: Option<String>,
    /// Grid resolution N (the grid is k/N plus all breakpoints)
    #[arg(long, global = true, default_value_t = geodesy::DEFAULT_RESOLUTION)]
    pub grid: u32,
    /// Absolute tolerance for approximate comparisons
    #[arg(long, global = true, env = "GEODESY_TOL", default_value_t = geodesy::DEFAULT_TOLERANCE)]
    pub tol: f64,
    /// Seed for every randomised step
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file (directory for commands writing several files)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Check the geodesic identity on the grid
    Verify(commands::VerifyArgs),
    /// Search for a witness (C, y) at a unit vector
    Witness(commands::WitnessArgs),
    /// Build the λ-family of geodesics through two intermediate points
    Family(commands::FamilyArgs),
    /// Laakso graph queries
    #[command(subcommand)]
    Laakso(laakso::LaaksoCommand),
    /// Cross-copy and same-copy geodesics in a glued double space
    Glue(commands::GlueArgs),
    /// Replace the part of a curve on [s, t] by another geodesic
    Splice(commands::SpliceArgs),
    /// Branch a geodesic off at time t up to depth M
    Branch(commands::BranchArgs),
    /// Write figure data as CSV
    PlotData(plot::PlotArgs),
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

fn run(cli: &Cli) -> anyhow::Result<Status> {
    let g = &cli.global;
    anyhow::ensure!(
        g.tol.is_finite() && g.tol >= 0.0,
        "tolerance must be a non-negative number, got {}",
        g.tol
    );
    match &cli.command {
        Command::Verify(a) => commands::verify(g, a),
        Command::Witness(a) => commands::witness(g, a),
        Command::Family(a) => commands::family(g, a),
        Command::Laakso(c) => laakso::run(g, c),
        Command::Glue(a) => commands::glue(g, a),
        Command::Splice(a) => commands::splice(g, a),
        Command::Branch(a) => commands::branch(g, a),
        Command::PlotData(a) => plot::run(g, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            // an internal consistency breach is a mathematical failure, not bad input
            match e.downcast_ref::<GeodesyError>() {
                Some(GeodesyError::Inconsistent(_)) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
