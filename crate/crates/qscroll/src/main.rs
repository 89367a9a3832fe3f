use std::process::ExitCode;

fn main() -> ExitCode {
    qscroll::cli::main()
}
