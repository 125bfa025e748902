use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let run = apollonia_cli::run(&argv);
    let _ = std::io::stdout().lock().write_all(run.stdout.as_bytes());
    let _ = std::io::stderr().lock().write_all(run.stderr.as_bytes());
    ExitCode::from(run.code)
}
