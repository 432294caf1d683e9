//! `geon` command-line front end: lattice checks, the two-context logic
//! demo, its spin-1/2 representation, and the wormhole billiard solver.
//!
//! Every run writes a `manifest.json` next to its outputs; `geon replay`
//! re-runs a manifest.

mod args;
mod commands;
pub mod manifest;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::Parser;
use thiserror::Error;

pub use args::{Check, Cli, Command};
pub use manifest::RunManifest;

/// Exit status of a completed run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }
}

/// Anything that stops a run before it can report a result. Exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("reading {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("writing {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn input(path: &Path, message: impl ToString) -> Self {
        CliError::Input { path: path.to_owned(), message: message.to_string() }
    }
}

pub const DEFAULT_OUT_DIR: &str = "out";

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Messages go to stdout/stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match commands::execute(&cli) {
        Ok(s) => s.code(),
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
