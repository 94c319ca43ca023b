use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(fanwalk::cli::main_with(std::env::args()) as u8)
}
