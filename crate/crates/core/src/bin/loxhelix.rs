fn main() {
    std::process::exit(loxhelix::cli::run(std::env::args_os()));
}
