//! `period-atlas`: period tables, monotonicity scans, parameter maps and
//! exact monotonicity certificates for the reversible quadratic family
//! and the equivariant family with homogeneous nonlinearities.
//!
//! Exit codes: 0 success, 1 certificate failure, 2 computational or
//! parse failure, 64 usage error.

mod commands;
mod grid;
mod runio;

use clap::{error::ErrorKind, Parser, Subcommand};
use std::process::ExitCode;

use commands::{
    cmd_certify, cmd_criterion, cmd_map, cmd_period, cmd_sturm, CertifyArgs, CriterionArgs,
    MapArgs, PeriodArgs, SturmArgs,
};

#[derive(Parser)]
#[command(
    name = "period-atlas",
    version,
    about = "Period functions of two planar center families and the exact certificate of \
             their monotonicity",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sweep a period table over an energy or radius grid
    Period(PeriodArgs),
    /// Scan the monotonicity-criterion operator for a single sign
    Criterion(CriterionArgs),
    /// Replay the exact monotonicity certificate for one branch
    Certify(CertifyArgs),
    /// Print the parameter map between the two families
    Map(MapArgs),
    /// Exact real-root count of a polynomial file on a rational interval
    Sturm(SturmArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = match &cli.cmd {
        Cmd::Period(args) => cmd_period(args),
        Cmd::Criterion(args) => cmd_criterion(args),
        Cmd::Certify(args) => cmd_certify(args),
        Cmd::Map(args) => cmd_map(args),
        Cmd::Sturm(args) => cmd_sturm(args),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
