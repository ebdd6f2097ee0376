fn main() {
    std::process::exit(rwclab_cli::run(std::env::args_os()));
}
