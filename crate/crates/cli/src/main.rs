//! `kemeny`: search-space reduction for Kemeny rank aggregation.
//!
//! Exit status: 0 ok, 1 usage or input error, 2 parse error, 3 internal
//! inconsistency (a rule produced a cyclic relation), 4 certification
//! violations found by `verify`.

mod args;
mod commands;
mod error;
mod input;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("kemeny: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Reduce(a) => commands::reduce(&a),
        Command::Stats(a) => commands::stats(&a),
        Command::Sample(a) => commands::sample(&a),
        Command::Verify(a) => commands::verify(&a),
    }
}
