//! Command-line front end for `ryserlab`: argument grammar, command
//! execution, run reports and the acceptance criteria.

pub mod acceptance;
pub mod args;
pub mod commands;
pub mod report;

use clap::Parser;

pub use args::Cli;
pub use commands::{execute, CliError};
pub use report::{RunReport, Status};

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    /// 0 success, 1 a failed verdict or detected inconsistency, 2 bad input.
    pub code: u8,
}

impl Invocation {
    fn error(message: String, code: u8) -> Self {
        Self {
            stdout: String::new(),
            stderr: message,
            code,
        }
    }
}

/// Parses `argv`, runs the command on a pool of `--threads` workers and
/// renders the report.
pub fn run<I, T>(argv: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) if err.use_stderr() => return Invocation::error(err.render().to_string(), 2),
        Err(err) => {
            return Invocation {
                stdout: err.render().to_string(),
                stderr: String::new(),
                code: 0,
            }
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads as usize)
        .build()
    {
        Ok(pool) => pool,
        Err(err) => return Invocation::error(format!("error: {err}\n"), 2),
    };
    match pool.install(|| execute(&cli)) {
        Ok(report) => Invocation {
            stdout: report.render(cli.format),
            stderr: String::new(),
            code: report.exit_code(),
        },
        Err(err) => Invocation::error(format!("error: {err}\n"), err.exit_code()),
    }
}
