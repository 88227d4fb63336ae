fn main() {
    std::process::exit(tpdc::cli_main(std::env::args_os()));
}
