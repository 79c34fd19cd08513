fn main() {
    std::process::exit(himax_cli::run(std::env::args_os()));
}
