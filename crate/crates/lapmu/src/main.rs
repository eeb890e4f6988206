fn main() {
    std::process::exit(lapmu::cli::run(std::env::args_os()));
}
