fn main() {
    std::process::exit(pfecc::cli::run(std::env::args_os()));
}
