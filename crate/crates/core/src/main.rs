fn main() {
    env_logger::init();
    std::process::exit(riesz_matvar::cli::run(std::env::args_os()));
}
