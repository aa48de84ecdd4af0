fn main() {
    std::process::exit(spbcast::cli::run_cli(std::env::args().skip(1)));
}
