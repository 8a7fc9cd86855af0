fn main() {
    std::process::exit(psinv::cli::run(std::env::args_os()));
}
