use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = parry_abelian::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(outcome.report.as_bytes());
    let _ = std::io::stderr().write_all(outcome.diagnostics.as_bytes());
    ExitCode::from(outcome.exit_code)
}
