//! Command-line front end for `lpgeom`: JSON body descriptors, the `op`,
//! `verify`, `sweep` and `flow` commands, and deterministic JSON/CSV output.

pub mod commands;
pub mod config;
pub mod descriptor;
pub mod error;
pub mod output;

use std::fs;
use std::io::Write;

use clap::Parser;

use crate::config::{thread_count, Cli, RunConfig};
use crate::error::{CliError, CliResult};

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("lpgeom: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> CliResult<()> {
    let cfg = RunConfig::from_cli(cli)?;
    if let Some(threads) = thread_count()? {
        // A second initialization in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let out = commands::run(&cli.command, &cfg)?;
    match &cfg.output {
        Some(path) => {
            fs::write(path, &out.bytes).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
            if let Some(s) = &out.summary {
                println!("{s}");
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&out.bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::config(format!("standard output: {e}")))?;
            if let Some(s) = &out.summary {
                eprintln!("{s}");
            }
        }
    }
    if out.violations > 0 {
        return Err(CliError::Violation(out.violations));
    }
    Ok(())
}
