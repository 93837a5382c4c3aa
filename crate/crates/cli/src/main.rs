fn main() {
    std::process::exit(rtoa_cli::run(std::env::args_os()));
}
