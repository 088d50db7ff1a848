fn main() {
    std::process::exit(dualball_cli::main_with_args(std::env::args_os()));
}
