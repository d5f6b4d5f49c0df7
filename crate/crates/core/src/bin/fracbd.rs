fn main() {
    std::process::exit(fracbd::cli::run(std::env::args_os()));
}
