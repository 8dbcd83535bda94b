fn main() {
    std::process::exit(bracket_cli::run(std::env::args_os()));
}
