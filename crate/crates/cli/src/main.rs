fn main() {
    std::process::exit(gammaring_cli::run());
}
