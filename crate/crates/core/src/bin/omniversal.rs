fn main() {
    std::process::exit(omniversal::cli::run(std::env::args_os()));
}
