fn main() {
    std::process::exit(sigmafock::cli::main_with_args(std::env::args_os()));
}
