fn main() {
    std::process::exit(qwk_cli::run(std::env::args_os()));
}
