fn main() {
    std::process::exit(matargs::cli::run(std::env::args_os()));
}
