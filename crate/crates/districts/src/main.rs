fn main() {
    std::process::exit(districts::cli::main_with_args(std::env::args_os()));
}
