//! `wdelta`: command-line front end for the weak-delta toolkit.
//!
//! Exit codes: 0 success or free, 1 structure found by `check`, 2 usage or
//! input error, 3 search timeout.

mod cache;
mod cli;
mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use crate::cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match commands::run(&cli) {
        Ok(mut outcome) => {
            outcome.report.runtime_ms = start.elapsed().as_millis() as u64;
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&outcome.report).expect("reports serialize"));
            } else {
                print!("{}", outcome.human);
            }
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::EXIT_INPUT)
        }
    }
}
