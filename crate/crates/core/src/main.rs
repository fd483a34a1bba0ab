fn main() {
    std::process::exit(surfcurv::cli::run(std::env::args_os()));
}
