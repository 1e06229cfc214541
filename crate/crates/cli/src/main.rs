mod args;
mod commands;
mod output;
mod svg;

use std::process::ExitCode;

use anyhow::Result;
use clap::error::ErrorKind;
use clap::Parser;
use multiplex_juggling::error::Error;
use multiplex_juggling::par::Exec;

use args::Cli;
use commands::{Session, VerificationFailed};
use output::Sink;

const USAGE: u8 = 1;
const INFEASIBLE: u8 = 2;
const VERIFICATION: u8 = 3;

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<VerificationFailed>().is_some() {
        return VERIFICATION;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Infeasible { .. }) => INFEASIBLE,
        Some(Error::Inexact { .. }) | Some(Error::NotDivisible { .. }) => VERIFICATION,
        _ => USAGE,
    }
}

fn configure_threads(threads: Option<usize>) -> Result<Exec> {
    match threads {
        Some(1) => Ok(Exec::Sequential),
        Some(n) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()?;
            Ok(Exec::Parallel)
        }
        None => Ok(Exec::Parallel),
    }
}

fn run(cli: Cli) -> Result<()> {
    let exec = configure_threads(cli.global.threads)?;
    let session = Session {
        sink: Sink {
            format: cli.global.format,
            destination: cli.global.output,
        },
        exec,
        force: cli.global.force,
        cache_dir: cli.global.cache_dir,
    };
    commands::run(&session, cli.command)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(USAGE),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
