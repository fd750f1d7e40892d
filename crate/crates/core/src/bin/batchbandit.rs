fn main() {
    std::process::exit(batchbandit::harness::cli_main(std::env::args_os()));
}
