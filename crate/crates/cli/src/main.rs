fn main() {
    std::process::exit(warpmean_cli::run(std::env::args_os()));
}
