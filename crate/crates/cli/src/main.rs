fn main() {
    std::process::exit(prolate_cli::main_with_args(std::env::args_os()));
}
