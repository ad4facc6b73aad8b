use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    match nucleus_cli::run(nucleus_cli::Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
