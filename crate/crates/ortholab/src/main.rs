use std::process::ExitCode;

fn main() -> ExitCode {
    ortholab::cli::run(std::env::args_os())
}
