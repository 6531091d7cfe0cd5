fn main() {
    std::process::exit(zuslab_cli::run(std::env::args_os()));
}
