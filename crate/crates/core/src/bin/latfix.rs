use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(latfix::cli::run(std::env::args()) as u8)
}
