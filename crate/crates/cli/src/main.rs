//! `fq`: command-line reports over Fermat quotients — single values, the
//! vanishing sets and their counts, Ihara-type sums, the index logarithm, the
//! generalized divisor function, and the bound checks, as CSV or JSONL.
//!
//! Exit codes: 0 success, 1 a checked inequality was violated, 2 bad usage,
//! 3 internal failure (I/O, corrupt cache).

use std::process::ExitCode;

use clap::Parser;

mod args;
mod cache;
mod rows;
mod run;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match run::run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
