fn main() {
    std::process::exit(tandet::cli::run(std::env::args_os()));
}
