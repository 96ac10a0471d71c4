//! Library side of the `cayley-imm` binary: argument types, the command
//! implementations and the verification suites.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error,
//! 3 the request is outside the enumeration envelope.

pub mod args;
pub mod commands;
pub mod verify;

use std::fmt;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

pub use args::Cli;
use args::Command;

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    ChecksFailed,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::ChecksFailed => 1,
        }
    }

    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::ChecksFailed
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Envelope(String),
    Failed(String),
    /// stdout was closed by the reader.
    Closed,
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Envelope(_) => 3,
            CliError::Closed => 0,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Envelope(m) | CliError::Failed(m) => f.write_str(m),
            CliError::Closed => f.write_str("output closed"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<immanant_core::Error> for CliError {
    fn from(e: immanant_core::Error) -> Self {
        use immanant_core::Error as E;
        let msg = e.to_string();
        match e {
            E::EnvelopeExceeded { .. } => CliError::Envelope(msg),
            E::InexactDivision { .. }
            | E::Singular { .. }
            | E::IdentityFailed { .. }
            | E::Overflow(_) => CliError::Failed(msg),
            _ => CliError::Usage(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return CliError::Closed;
        }
        CliError::Usage(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Failed(format!("serialization failed: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Sizes the global rayon pool from `IMM_THREADS` (unset or 0 means auto).
pub fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("IMM_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("IMM_THREADS={raw:?} is not a thread count")))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))?;
    }
    Ok(())
}

/// Pretty JSON with a trailing newline, to `out` if given, else `stdout`.
pub(crate) fn emit_json<T: Serialize>(
    value: &T,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit_text(&text, out, stdout)
}

/// Single-line JSON, for large payloads such as polynomials.
pub(crate) fn emit_json_compact<T: Serialize>(
    value: &T,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> CliResult<()> {
    let mut text = serde_json::to_string(value)?;
    text.push('\n');
    emit_text(&text, out, stdout)
}

pub(crate) fn emit_text(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<Outcome> {
    match cli.command {
        Command::Imm(a) => commands::imm(a, stdout, stderr),
        Command::Twin(a) => commands::twin(a, stdout, stderr),
        Command::Support(a) => commands::support(a, stdout),
        Command::Padic(a) => commands::padic(a, stdout),
        Command::Minors(a) => commands::minors(a, stdout),
        Command::Verify(a) => verify::verify(a, stdout, stderr),
        Command::Explore(a) => commands::explore(a, stdout),
        Command::SearchPdGap(a) => commands::search_pd_gap(a, stdout),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use immanant_core::Error;

    #[test]
    fn exit_codes() {
        assert_eq!(Outcome::Pass.code(), 0);
        assert_eq!(Outcome::from_pass(false).code(), 1);
        let envelope: CliError = Error::EnvelopeExceeded {
            order: 11,
            limit: 10,
        }
        .into();
        assert_eq!(envelope.code(), 3);
        let parse: CliError = "c0".parse::<immanant_core::GroupSpec>().unwrap_err().into();
        assert_eq!(parse.code(), 2);
        let broken: CliError = Error::IdentityFailed {
            equation: "x = y",
            left: "1".into(),
            right: "2".into(),
        }
        .into();
        assert_eq!(broken.code(), 1);
        assert_eq!(CliError::from(Error::NotPrimePower(6)).code(), 2);
    }
}
