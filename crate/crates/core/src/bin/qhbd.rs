fn main() {
    std::process::exit(qhbd_core::cli::run(std::env::args_os()));
}
