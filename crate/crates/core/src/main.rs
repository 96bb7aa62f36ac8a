fn main() {
    std::process::exit(bigraph::cli::main_with_args(std::env::args_os()));
}
