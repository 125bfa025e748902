//! The `apollonia` command line as a library: argument types, subcommands,
//! run manifests, and an in-process entry point.

pub mod args;
pub mod commands;
pub mod error;
pub mod manifest;

use args::Cli;
use clap::Parser;
use error::CliError;

/// Parse arguments that follow the program name.
pub fn parse(argv: &[String]) -> Result<Cli, CliError> {
    Cli::try_parse_from(std::iter::once("apollonia".to_string()).chain(argv.iter().cloned()))
        .map_err(|e| CliError::Usage(e.to_string()))
}

/// What one invocation printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Run the command line on `argv` (without the program name).
pub fn run(argv: &[String]) -> Run {
    let cli = match Cli::try_parse_from(std::iter::once("apollonia".to_string()).chain(argv.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Run { code: 2, stdout: String::new(), stderr: text }
            } else {
                Run { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match commands::execute(&cli, argv) {
        Ok(stdout) => Run { code: 0, stdout, stderr: String::new() },
        Err(e) => {
            let stderr = if cli.json {
                let value = serde_json::json!({
                    "error": { "kind": e.kind(), "code": e.code(), "message": e.to_string() }
                });
                format!("{value}\n")
            } else {
                format!("error ({}): {e}\n", e.kind())
            };
            Run { code: e.code(), stdout: String::new(), stderr }
        }
    }
}
