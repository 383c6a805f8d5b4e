fn main() {
    std::process::exit(saturate::cli::run(std::env::args_os()));
}
