fn main() {
    std::process::exit(locbal::cli::run_cli(std::env::args_os()));
}
