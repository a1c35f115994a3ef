//! `twolevel` — command-line front end for the two-level atom toolkit.
//!
//! Every physical flag carries its unit in the flag name (`--tau-s`,
//! `--omega-rabi-radps`, `--t-s-ns`, …); there are no unitless physical
//! inputs. Exit codes: 0 success, 1 validation failure, 2 usage error,
//! 3 resource guard.

mod args;
mod commands;
mod failure;
mod output;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::failure::CliError;

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Constants(a) => commands::constants::run(&a),
        Command::Surface(a) => commands::surface::run(&a),
        Command::Slice(a) => commands::slice::run(&a),
        Command::Lifetime(a) => commands::lifetime::run(&a),
        Command::Validate(a) => commands::validate::run(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("twolevel: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
