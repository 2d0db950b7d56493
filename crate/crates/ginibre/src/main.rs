fn main() {
    std::process::exit(ginibre::cli::main_with_args(std::env::args_os()));
}
