use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = ttg_core::cli::run_argv(std::env::args_os());
    let text = outcome.output.as_bytes();
    let _ = if outcome.code == 0 {
        std::io::stdout().write_all(text)
    } else {
        std::io::stderr().write_all(text)
    };
    ExitCode::from(outcome.code as u8)
}
