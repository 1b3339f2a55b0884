#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches};

use args::{Cli, Command};
use error::{CliError, EXIT_USAGE};

fn run() -> Result<(), CliError> {
    let cmd = Cli::command().mut_subcommands(|s| s.args_override_self(true));
    let argv = config::merge(&cmd, std::env::args_os().collect())?;
    let matches = match cmd.try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let cli = Cli::from_arg_matches(&matches).map_err(|e| CliError::Usage(e.to_string()))?;
    let report = match &cli.command {
        Command::Constants(a) => commands::constants(a)?,
        Command::LowerBound(a) => commands::lower_bound(a)?,
        Command::UpperBound(a) => commands::upper_bound(a)?,
        Command::Step(a) => commands::step_cmd(a)?,
        Command::Sweep(a) => commands::sweep(a)?,
    };
    report.emit(cli.command.common().out.as_deref())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
