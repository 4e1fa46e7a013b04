fn main() {
    std::process::exit(pbracket::cli::run(std::env::args_os()));
}
