use std::process::ExitCode;

fn main() -> ExitCode {
    fluxlaw::cli::main()
}
