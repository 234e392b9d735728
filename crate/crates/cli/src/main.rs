fn main() {
    std::process::exit(hypdiagram_cli::main_with_args(std::env::args_os()));
}
