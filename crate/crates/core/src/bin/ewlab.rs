fn main() {
    std::process::exit(ewlab::cli::run(std::env::args_os()));
}
