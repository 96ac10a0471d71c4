use std::process::ExitCode;

use clap::Parser;
use immanant_cli::{configure_threads, run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| {
        let mut stdout = std::io::stdout().lock();
        let mut stderr = std::io::stderr().lock();
        run(cli, &mut stdout, &mut stderr)
    });
    match result {
        Ok(outcome) => ExitCode::from(outcome.code() as u8),
        Err(CliError::Closed) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
