fn main() {
    std::process::exit(ornata::cli::run(std::env::args_os()));
}
