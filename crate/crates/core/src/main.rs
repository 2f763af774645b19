fn main() {
    std::process::exit(opalab::cli::run(std::env::args_os()));
}
