fn main() {
    std::process::exit(hypclust::cli::run(std::env::args_os()));
}
