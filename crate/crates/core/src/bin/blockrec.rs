fn main() {
    std::process::exit(blockrec::harness::cli::cli_main(std::env::args_os()));
}
