use std::process::ExitCode;

fn main() -> ExitCode {
    econgas::cli::main()
}
