fn main() {
    std::process::exit(skewsort::cli::run(std::env::args_os()));
}
