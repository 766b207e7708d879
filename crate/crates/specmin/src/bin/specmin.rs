fn main() {
    std::process::exit(specmin::cli::run(std::env::args().skip(1).collect()));
}
