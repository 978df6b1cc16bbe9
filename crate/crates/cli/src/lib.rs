//! The `dualdag` command-line driver as a library, so that tests can run
//! commands in-process and inspect exit codes and output.
//!
//! Exit codes: 0 pass, 1 law or round-trip violation, 2 input or
//! configuration error, 3 non-convergence (or exhausted fuel for `run`).

pub mod args;
mod commands;
pub mod config;
pub mod error;

use std::ffi::OsString;

use clap::Parser;

pub use args::{Cli, Command, Format};
pub use config::FileConfig;
pub use error::{exit, CliError, Result};

/// Stack size for the worker thread; object-level recursion in the
/// reversible language maps onto host recursion.
const WORKER_STACK: usize = 512 * 1024 * 1024;

/// Everything a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    pub(crate) fn new(code: i32, stdout: String) -> Self {
        Output { code, stdout, stderr: String::new() }
    }

    fn error(e: &CliError) -> Self {
        Output { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

/// Settings shared by every command after merging the config file.
#[derive(Debug, Clone)]
pub(crate) struct Context {
    pub format: Format,
    pub timings: bool,
    pub file: FileConfig,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Output { code: exit::INPUT, stdout: String::new(), stderr: rendered }
            } else {
                Output::new(exit::PASS, rendered)
            };
        }
    };
    let worker = std::thread::Builder::new().stack_size(WORKER_STACK).spawn(move || execute(cli));
    match worker.map(|h| h.join()) {
        Ok(Ok(out)) => out,
        Ok(Err(_)) => Output { code: exit::INPUT, stdout: String::new(), stderr: "error: command panicked\n".into() },
        Err(e) => Output { code: exit::INPUT, stdout: String::new(), stderr: format!("error: cannot start worker: {e}\n") },
    }
}

fn execute(cli: Cli) -> Output {
    let file = match &cli.config {
        Some(path) => match FileConfig::load(path) {
            Ok(f) => f,
            Err(e) => return Output::error(&e),
        },
        None => FileConfig::default(),
    };
    let ctx = Context {
        format: cli.format.or(file.format).unwrap_or(Format::Text),
        timings: cli.timings || file.timings.unwrap_or(false),
        file,
    };
    let result = match &cli.command {
        Command::Laws(a) => commands::laws::run(&ctx, a),
        Command::Fix(a) => commands::fixtrace::fix(&ctx, a),
        Command::Trace(a) => commands::fixtrace::trace(&ctx, a),
        Command::Run(a) => commands::lang::run(&ctx, a),
        Command::Invert(a) => commands::lang::invert(&ctx, a),
        Command::Roundtrip(a) => commands::lang::roundtrip(&ctx, a),
    };
    result.unwrap_or_else(|e| Output::error(&e))
}

/// Serializes a JSON document with a trailing newline.
pub(crate) fn json_line(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

pub(crate) fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}
