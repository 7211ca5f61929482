fn main() {
    std::process::exit(dra_core::cli::main_with_args(std::env::args_os()));
}
