fn main() {
    std::process::exit(bellnum_cli::run(std::env::args_os()));
}
