fn main() {
    std::process::exit(hhft::cli::run(std::env::args()));
}
