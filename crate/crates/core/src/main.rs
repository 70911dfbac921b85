fn main() {
    std::process::exit(projrect::cli::run(std::env::args_os()));
}
