use std::process::ExitCode;

fn main() -> ExitCode {
    hyperlab::cli::run()
}
