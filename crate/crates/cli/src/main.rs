//! `fpa` command-line tool.
//!
//! Exit codes: 0 success, 2 usage, 3 invalid configuration, 4 runtime failure.

mod commands;
mod settings;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fpa::Error;

use settings::Flags;

#[derive(Parser, Debug)]
#[command(name = "fpa", version, about = "Flower pollination algorithm benchmarks", arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Repeated runs of one or all algorithms on one benchmark.
    Run(Flags),
    /// Ten benchmarks × GA, PSO, FPA success table.
    Table1(Flags),
    /// Pressure-vessel design runs with best solution and error curve.
    Vessel(Flags),
    /// Registered benchmarks with dimensions, bounds and optima.
    ListBenchmarks,
    /// Mean error curve on one benchmark, written as CSV.
    Curve(Flags),
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io { .. } | Error::Csv { .. } => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::ListBenchmarks => {
            commands::list_benchmarks();
            Ok(())
        }
        Command::Run(f) | Command::Table1(f) | Command::Vessel(f) | Command::Curve(f) => {
            f.resolve().and_then(|flags| match cli.command {
                Command::Run(_) => commands::run(&flags),
                Command::Table1(_) => commands::table1(&flags),
                Command::Vessel(_) => commands::vessel(&flags),
                _ => commands::curve(&flags),
            })
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
