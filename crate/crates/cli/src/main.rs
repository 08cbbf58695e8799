//! `valmax`: command-line front end for good semigroup ideals.
//!
//! Exit codes: 0 when everything passes, 1 when a check fails or the input is
//! invalid, 2 on usage errors.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(err) = configure_threads(cli.parallel) {
        eprintln!("error: {err:#}");
        return ExitCode::from(2);
    }
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: Option<usize>) -> anyhow::Result<()> {
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(threads: Option<usize>) -> anyhow::Result<()> {
    if threads.is_some_and(|n| n > 1) {
        eprintln!("warning: built without the `parallel` feature; running sequentially");
    }
    Ok(())
}
