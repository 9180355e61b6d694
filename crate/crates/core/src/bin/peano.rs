fn main() {
    std::process::exit(peano_core::cli::main_with_args(std::env::args_os()));
}
