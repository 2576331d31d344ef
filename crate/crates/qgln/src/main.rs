use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(qgln::cli::run(std::env::args()) as u8)
}
