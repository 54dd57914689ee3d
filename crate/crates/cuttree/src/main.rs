fn main() -> std::process::ExitCode {
    cuttree::cli::main_with_args(std::env::args_os())
}
