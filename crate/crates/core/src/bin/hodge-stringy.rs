use std::process::ExitCode;

fn main() -> ExitCode {
    hodge_stringy::cli::main_with_args(std::env::args_os()).into()
}
