fn main() {
    std::process::exit(insitu_cli::run(std::env::args_os()));
}
